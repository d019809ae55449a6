#ifndef DYNGCD_ERRORS_HPP
#define DYNGCD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dyngcd {

/* Error taxonomy shared by every module.  The CLI maps each class to an
 * exit code: DomainError -> 2, HypothesisViolation -> 3, BudgetExceeded -> 4.
 */

/// Input outside the mathematical domain of an operation (zero where a unit
/// is required, degree too small, malformed rational...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A theorem hypothesis does not hold for the supplied data, e.g. an
/// exceptional target point.
class HypothesisViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A configured resource budget ran out before the operation finished.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(const std::string& what, std::size_t reached)
        : std::runtime_error(what), reached_(reached) {}
    /// Amount of the budgeted resource consumed when giving up (digits,
    /// degree, iterations; meaning depends on the thrower).
    std::size_t reached() const noexcept { return reached_; }

  private:
    std::size_t reached_;
};

/// A decision procedure could not conclude within its budget.  Never
/// silently converted into a negative answer.
class Indeterminate : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace dyngcd

#endif
