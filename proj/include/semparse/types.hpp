#pragma once

#include <map>
#include <memory>
#include <string>

#include "semparse/term.hpp"

namespace semparse {

class TermType;
using TypePtr = std::shared_ptr<const TermType>;

/// Simple types: atomic names and right-nested arrows.
class TermType {
public:
    static TypePtr atomic(std::string name);
    static TypePtr arrow(TypePtr from, TypePtr to);

    bool is_atomic() const { return from_ == nullptr; }
    const std::string& name() const { return name_; }
    const TypePtr& from() const { return from_; }
    const TypePtr& to() const { return to_; }

    /// Length of the arrow chain (0 for atomic types).
    int arity() const;

private:
    TermType(std::string n, TypePtr f, TypePtr t)
        : name_(std::move(n)), from_(std::move(f)), to_(std::move(t)) {}
    std::string name_;
    TypePtr from_, to_;
};

bool type_equal(const TypePtr& a, const TypePtr& b);
std::string render_type(const TypePtr& t);

/// `e`, `e -> t`, `(e -> t) -> t`; '->' is right-associative.
TypePtr parse_type(const std::string& text);

/// Constant typing environment. Lookup is total: unknown constants default
/// to the atomic default lifted to an arrow chain matching the arity seen
/// at the use site.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::string default_atom) : default_atom_(std::move(default_atom)) {}

    void declare(const std::string& constant, TypePtr type);
    TypePtr lookup(const std::string& constant, int observed_arity) const;
    bool declared(const std::string& constant) const;
    const std::string& default_atom() const { return default_atom_; }

    /// Lines of `constant <TAB> type`; '#' starts a comment.
    static Signature from_text(const std::string& text);

private:
    std::map<std::string, TypePtr> types_;
    std::string default_atom_ = "e";
};

/// Simple-type inference with unification; fresh type variables are reported
/// as atomic types named a, b, c, ... Throws TypeClash when no assignment
/// exists.
TypePtr infer_type(const TermPtr& t, const Signature& sig);

}  // namespace semparse
