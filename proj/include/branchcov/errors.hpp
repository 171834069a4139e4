#pragma once

#include <stdexcept>
#include <string>

namespace branchcov {

// A rejected precondition. `clause()` names the violated hypothesis so the
// CLI can report it verbatim (exit code 2).
class hypothesis_error : public std::runtime_error {
public:
    explicit hypothesis_error(std::string clause)
        : std::runtime_error("hypothesis violation: " + clause),
          clause_(std::move(clause)) {}

    const std::string& clause() const { return clause_; }

private:
    std::string clause_;
};

// Malformed input (cycle strings, JSON, inline partition syntax). Exit code 1.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search ran out of budget before finishing. Exit code 3 when the
// partial result is all we have.
class budget_exhausted : public std::runtime_error {
public:
    explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace branchcov
