#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace atomnfa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(const std::string& file, int line, const std::string& msg)
        : Error(file + ":" + std::to_string(line) + ": " + msg),
          file(file), line(line) {}
    std::string file;
    int line;
};

struct AlphabetMismatch : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct ObjectMismatch : Error { using Error::Error; };
struct LanguageMismatch : Error { using Error::Error; };
struct NotReversePair : Error { using Error::Error; };
struct NotAtomic : Error { using Error::Error; };
struct NotNuclear : Error { using Error::Error; };
struct NotGroupLanguage : Error { using Error::Error; };
struct InvalidCertificate : Error { using Error::Error; };
struct InvalidMorphism : Error { using Error::Error; };
struct EmptyIrreducibles : Error { using Error::Error; };

/// Thrown when an enumeration or materialization exceeds its budget.
/// Carries the best bounds established before giving up.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg,
                            std::optional<int> lower = std::nullopt,
                            std::optional<int> upper = std::nullopt)
        : Error(msg), lower(lower), upper(upper) {}
    std::optional<int> lower;
    std::optional<int> upper;
};

}  // namespace atomnfa
