#pragma once

#include <memory>
#include <optional>
#include <string>

#include "semparse/errors.hpp"

namespace semparse {

enum class SlashDir { Forward, Backward };

class Category;
using CategoryPtr = std::shared_ptr<const Category>;

/// CCG category: an atom (S, N, NP, ...) or result/argument pair with a
/// slash direction. Prints as `(NP\N)/N` and round-trips.
class Category {
public:
    static CategoryPtr atom(std::string name);
    static CategoryPtr slash(CategoryPtr result, SlashDir dir, CategoryPtr argument);

    bool is_atom() const { return result_ == nullptr; }
    const std::string& name() const { return name_; }
    const CategoryPtr& result() const { return result_; }
    const CategoryPtr& argument() const { return argument_; }
    SlashDir direction() const { return dir_; }

private:
    Category(std::string n, CategoryPtr r, SlashDir d, CategoryPtr a)
        : name_(std::move(n)), result_(std::move(r)), argument_(std::move(a)), dir_(d) {}
    std::string name_;
    CategoryPtr result_, argument_;
    SlashDir dir_ = SlashDir::Forward;
};

bool category_equal(const CategoryPtr& a, const CategoryPtr& b);
std::string render_category(const CategoryPtr& c);
CategoryPtr parse_category(const std::string& text);

enum class CombineRule { ForwardApp, BackwardApp };

struct Combination {
    CategoryPtr category;
    CombineRule rule;
};

/// Directional application: X/Y + Y -> X, Y + X\Y -> X; nullopt otherwise.
std::optional<Combination> combine(const CategoryPtr& left, const CategoryPtr& right);

}  // namespace semparse
