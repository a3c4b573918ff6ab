#ifndef CDAP_ERRORS_HPP
#define CDAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cdap {

// Malformed input file. line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Assignment violates feasibility (duplicate door, index out of range, ...).
class FeasibilityError : public std::invalid_argument {
public:
    explicit FeasibilityError(const std::string& message) : std::invalid_argument(message) {}
};

// Enumeration refused because it would exceed the evaluation budget.
class BudgetExceededError : public std::runtime_error {
public:
    BudgetExceededError(unsigned long long required, unsigned long long budget)
        : std::runtime_error("enumeration requires " + std::to_string(required) +
                             " evaluations, budget is " + std::to_string(budget)),
          required_(required),
          budget_(budget) {}

    unsigned long long required() const { return required_; }
    unsigned long long budget() const { return budget_; }

private:
    unsigned long long required_;
    unsigned long long budget_;
};

}  // namespace cdap

#endif
