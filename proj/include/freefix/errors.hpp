#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace freefix {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A symbol outside the alphabet, or two values over different alphabets.
struct AlphabetError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// Precondition violations (empty word where a nonempty one is required, etc).
struct DomainError : Error {
  using Error::Error;
};

// A configured search cap was exceeded. Raised instead of silently degrading
// the result; callers that can continue with a weaker answer catch it and
// record the failure.
struct BudgetError : Error {
  BudgetError(std::string which, const std::string& detail)
      : Error(which + ": " + detail), budget(std::move(which)) {}
  std::string budget;
};

// A word expected to lie in a subgroup does not.
struct NotASubgroupError : Error {
  explicit NotASubgroupError(const std::string& word)
      : Error("word is not in the subgroup: " + word), word_text(word) {}
  std::string word_text;
};

}  // namespace freefix
