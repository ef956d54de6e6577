#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semparse {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

struct NonTerminating : Error {
    explicit NonTerminating(const std::string& msg) : Error(msg) {}
};

struct TypeClash : Error {
    explicit TypeClash(const std::string& msg) : Error(msg) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

struct RuleViolation : Error {
    explicit RuleViolation(const std::string& msg) : Error(msg) {}
};

struct NoDerivation : Error {
    explicit NoDerivation(const std::string& msg) : Error(msg) {}
};

struct AmbiguousDerivation : Error {
    explicit AmbiguousDerivation(const std::string& msg) : Error(msg) {}
};

struct UndefinedSymbol : Error {
    explicit UndefinedSymbol(const std::string& msg) : Error(msg) {}
};

struct DuplicateProduction : Error {
    explicit DuplicateProduction(const std::string& msg) : Error(msg) {}
};

struct UnparsableTemplate : Error {
    explicit UnparsableTemplate(const std::string& msg) : Error(msg) {}
};

struct NotDominated : Error {
    explicit NotDominated(const std::string& msg) : Error(msg) {}
};

struct MissingEntry : Error {
    std::string word;
    std::string category;
    MissingEntry(const std::string& w, const std::string& cat)
        : Error("no lexicon entry for '" + w + "' : " + cat), word(w), category(cat) {}
};

struct UnsupportedPredicate : Error {
    explicit UnsupportedPredicate(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace semparse
