#include "semparse/category.hpp"

#include <cctype>

namespace semparse {

CategoryPtr Category::atom(std::string name) {
    return CategoryPtr(new Category(std::move(name), nullptr, SlashDir::Forward, nullptr));
}

CategoryPtr Category::slash(CategoryPtr result, SlashDir dir, CategoryPtr argument) {
    return CategoryPtr(new Category("", std::move(result), dir, std::move(argument)));
}

bool category_equal(const CategoryPtr& a, const CategoryPtr& b) {
    if (a->is_atom() != b->is_atom()) return false;
    if (a->is_atom()) return a->name() == b->name();
    return a->direction() == b->direction() && category_equal(a->result(), b->result()) &&
           category_equal(a->argument(), b->argument());
}

std::string render_category(const CategoryPtr& c) {
    if (c->is_atom()) return c->name();
    std::string lhs = render_category(c->result());
    if (!c->result()->is_atom()) lhs = "(" + lhs + ")";
    std::string rhs = render_category(c->argument());
    if (!c->argument()->is_atom()) rhs = "(" + rhs + ")";
    return lhs + (c->direction() == SlashDir::Forward ? "/" : "\\") + rhs;
}

namespace {

struct CatParser {
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    CategoryPtr parse() {
        CategoryPtr c = atom();
        for (;;) {
            skip();
            if (i < s.size() && (s[i] == '/' || s[i] == '\\')) {
                SlashDir d = s[i] == '/' ? SlashDir::Forward : SlashDir::Backward;
                ++i;
                c = Category::slash(c, d, atom());
            } else {
                return c;
            }
        }
    }

    CategoryPtr atom() {
        skip();
        if (i < s.size() && s[i] == '(') {
            ++i;
            CategoryPtr c = parse();
            skip();
            if (i >= s.size() || s[i] != ')')
                throw SyntaxError("expected ')' in category", i);
            ++i;
            return c;
        }
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (i == start) throw SyntaxError("expected a category atom", i);
        return Category::atom(s.substr(start, i - start));
    }
};

}  // namespace

CategoryPtr parse_category(const std::string& text) {
    CatParser p{text};
    CategoryPtr c = p.parse();
    p.skip();
    if (p.i != text.size()) throw SyntaxError("trailing input after category", p.i);
    return c;
}

std::optional<Combination> combine(const CategoryPtr& left, const CategoryPtr& right) {
    if (!left->is_atom() && left->direction() == SlashDir::Forward &&
        category_equal(left->argument(), right))
        return Combination{left->result(), CombineRule::ForwardApp};
    if (!right->is_atom() && right->direction() == SlashDir::Backward &&
        category_equal(right->argument(), left))
        return Combination{right->result(), CombineRule::BackwardApp};
    return std::nullopt;
}

}  // namespace semparse
