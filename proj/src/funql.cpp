#include "semparse/funql.hpp"

#include <algorithm>

namespace semparse {

void GeoDatabase::add_border(const std::string& a, const std::string& b) {
    borders.emplace_back(a, b);
    borders.emplace_back(b, a);
}

bool GeoDatabase::borders_contains(const std::string& a, const std::string& b) const {
    return std::find(borders.begin(), borders.end(), std::make_pair(a, b)) != borders.end();
}

const GeoDatabase& GeoDatabase::bundled() {
    static const GeoDatabase db = [] {
        GeoDatabase d;
        d.states = {
            {"arkansas", 3011000, "usa"},       {"texas", 29146000, "usa"},
            {"mississippi", 2940000, "usa"},    {"tennessee", 6911000, "usa"},
            {"virginia", 8631000, "usa"},       {"north carolina", 10439000, "usa"},
            {"new york", 20201000, "usa"},      {"new jersey", 9289000, "usa"},
            {"alaska", 733000, "usa"},          {"hawaii", 1455000, "usa"},
        };
        d.add_border("arkansas", "texas");
        d.add_border("arkansas", "mississippi");
        d.add_border("arkansas", "tennessee");
        d.add_border("mississippi", "tennessee");
        d.add_border("tennessee", "virginia");
        d.add_border("tennessee", "north carolina");
        d.add_border("virginia", "north carolina");
        d.add_border("new york", "new jersey");
        d.rivers = {
            {"mississippi", {"mississippi", "tennessee", "arkansas"}},
            {"arkansas", {"arkansas"}},
            {"red", {"texas", "arkansas"}},
            {"rio grande", {"texas"}},
            {"hudson", {"new york"}},
            {"tennessee", {"tennessee"}},
            {"james", {"virginia"}},
            {"yukon", {"alaska"}},
        };
        d.cities = {
            {"little rock", "arkansas"}, {"austin", "texas"},
            {"houston", "texas"},        {"jackson", "mississippi"},
            {"richmond", "virginia"},    {"albany", "new york"},
            {"nashville", "tennessee"},  {"juneau", "alaska"},
        };
        d.lakes = {
            {"caddo", "texas"},
            {"reelfoot", "tennessee"},
            {"ross barnett", "mississippi"},
        };
        d.places = {
            {"mount mckinley", 6194},
            {"mount mitchell", 2037},
            {"high point", 550},
        };
        return d;
    }();
    return db;
}

namespace {

struct Entity {
    std::string kind;  // state, river, city, lake, place, country, num
    std::string name;
    bool operator<(const Entity& o) const {
        return kind != o.kind ? kind < o.kind : name < o.name;
    }
    std::string text() const { return kind + ":" + name; }
};

using EntitySet = std::set<Entity>;

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '\'' && s.back() == '\'')
        return s.substr(1, s.size() - 2);
    return s;
}

struct Evaluator {
    const GeoDatabase& db;

    EntitySet universe() const {
        EntitySet out;
        for (const auto& s : db.states) out.insert({"state", s.name});
        for (const auto& r : db.rivers) out.insert({"river", r.name});
        for (const auto& c : db.cities) out.insert({"city", c.name});
        for (const auto& l : db.lakes) out.insert({"lake", l.name});
        for (const auto& p : db.places) out.insert({"place", p.name});
        out.insert({"country", "usa"});
        return out;
    }

    EntitySet filter(const EntitySet& in, const std::string& kind) const {
        EntitySet out;
        for (const auto& e : in)
            if (e.kind == kind) out.insert(e);
        return out;
    }

    // Entities located inside the given containers (states or the country).
    EntitySet located_in(const EntitySet& in) const {
        EntitySet out;
        for (const auto& e : in) {
            if (e.kind == "state") {
                for (const auto& r : db.rivers)
                    if (std::find(r.traverses.begin(), r.traverses.end(), e.name) !=
                        r.traverses.end())
                        out.insert({"river", r.name});
                for (const auto& c : db.cities)
                    if (c.state == e.name) out.insert({"city", c.name});
                for (const auto& l : db.lakes)
                    if (l.state == e.name) out.insert({"lake", l.name});
            } else if (e.kind == "country") {
                for (const auto& s : db.states)
                    if (s.country == e.name) out.insert({"state", s.name});
                for (const auto& r : db.rivers) out.insert({"river", r.name});
                for (const auto& c : db.cities) out.insert({"city", c.name});
                for (const auto& l : db.lakes) out.insert({"lake", l.name});
            }
        }
        return out;
    }

    EntitySet next_to(const EntitySet& in) const {
        EntitySet out;
        for (const auto& e : in) {
            if (e.kind != "state") continue;
            for (const auto& [a, b] : db.borders)
                if (b == e.name) out.insert({"state", a});
        }
        return out;
    }

    EntitySet eval(const TermPtr& t) const {
        Spine s = spine_of(t);
        if (!s.head->is_constant())
            throw UnsupportedPredicate("funql terms must be headed by constants: " +
                                       render_term(t));
        const std::string& head = s.head->name();
        auto arity = [&](std::size_t n) {
            if (s.args.size() != n)
                throw UnsupportedPredicate(head + " expects " + std::to_string(n) +
                                           " argument(s)");
        };
        if (head == "all" && s.args.empty()) return universe();
        if (head == "answer") {
            arity(1);
            return eval(s.args[0]);
        }
        if (head == "state" || head == "river" || head == "city" || head == "lake") {
            arity(1);
            return filter(eval(s.args[0]), head);
        }
        if (head == "loc_2") {
            arity(1);
            return located_in(eval(s.args[0]));
        }
        if (head == "next_to_2") {
            arity(1);
            return next_to(eval(s.args[0]));
        }
        if (head == "exclude") {
            arity(2);
            EntitySet a = eval(s.args[0]);
            for (const auto& e : eval(s.args[1])) a.erase(e);
            return a;
        }
        if (head == "stateid" || head == "riverid" || head == "cityid" ||
            head == "placeid" || head == "countryid") {
            arity(1);
            if (!s.args[0]->is_constant())
                throw UnsupportedPredicate(head + " expects a name constant");
            std::string kind = head.substr(0, head.size() - 2);
            return {{kind, unquote(s.args[0]->name())}};
        }
        if (head == "population_1") {
            arity(1);
            EntitySet out;
            for (const auto& e : eval(s.args[0]))
                if (e.kind == "state")
                    for (const auto& st : db.states)
                        if (st.name == e.name)
                            out.insert({"num", std::to_string(st.population)});
            return out;
        }
        if (head == "elevation_1") {
            arity(1);
            EntitySet out;
            for (const auto& e : eval(s.args[0]))
                if (e.kind == "place")
                    for (const auto& p : db.places)
                        if (p.name == e.name)
                            out.insert({"num", std::to_string(p.elevation)});
            return out;
        }
        throw UnsupportedPredicate("unsupported funql predicate: " + head);
    }
};

}  // namespace

Answer eval_funql(const TermPtr& term, const GeoDatabase& db) {
    Evaluator ev{db};
    Answer out;
    for (const auto& e : ev.eval(beta_normalize(term))) out.insert(e.text());
    return out;
}

}  // namespace semparse
