#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semparse/term.hpp"

namespace semparse {

/// Desk-scale geography fact tables.
struct GeoDatabase {
    struct State {
        std::string name;
        long population;
        std::string country;
    };
    struct River {
        std::string name;
        std::vector<std::string> traverses;
    };
    struct City {
        std::string name;
        std::string state;
    };
    struct Lake {
        std::string name;
        std::string state;
    };
    struct Place {
        std::string name;
        long elevation;
    };

    std::vector<State> states;
    std::vector<River> rivers;
    std::vector<City> cities;
    std::vector<Lake> lakes;
    std::vector<Place> places;
    std::vector<std::pair<std::string, std::string>> borders;  // stored symmetric

    void add_border(const std::string& a, const std::string& b);
    bool borders_contains(const std::string& a, const std::string& b) const;

    /// The bundled toy database used by the fixtures.
    static const GeoDatabase& bundled();
};

/// Typed answers: "state:arkansas", "river:red", "num:6194", ...
using Answer = std::set<std::string>;

/// Set-semantics interpreter for the supported funql predicate inventory.
/// Throws UnsupportedPredicate for anything else.
Answer eval_funql(const TermPtr& term, const GeoDatabase& db);

}  // namespace semparse
