#include "semparse/lexicon.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace semparse {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::InitialC: return "initial_c";
        case Provenance::InitialN: return "initial_n";
        case Provenance::Inverse: return "inverse";
        case Provenance::Generalized: return "generalized";
        case Provenance::Trivial: return "trivial";
    }
    return "inverse";
}

Provenance provenance_from_name(const std::string& s) {
    if (s == "initial_c") return Provenance::InitialC;
    if (s == "initial_n") return Provenance::InitialN;
    if (s == "inverse") return Provenance::Inverse;
    if (s == "generalized") return Provenance::Generalized;
    if (s == "trivial") return Provenance::Trivial;
    throw FormatError("unknown provenance: " + s);
}

std::string LexiconEntry::phrase_text() const {
    std::string out;
    for (std::size_t i = 0; i < phrase.size(); ++i) {
        if (i) out += ' ';
        out += phrase[i];
    }
    return out;
}

std::string Lexicon::pair_key(const std::string& phrase, const CategoryPtr& cat) {
    return phrase + "\t" + render_category(cat);
}

int Lexicon::add(LexiconEntry entry) {
    std::string triple = pair_key(entry.phrase_text(), entry.category) + "\t" +
                         canonical_key(entry.semantics);
    auto it = by_triple_.find(triple);
    if (it != by_triple_.end()) return it->second;
    int id = static_cast<int>(entries_.size());
    by_pair_[pair_key(entry.phrase_text(), entry.category)].push_back(id);
    by_triple_[triple] = id;
    entries_.push_back(std::move(entry));
    return id;
}

const std::vector<int>& Lexicon::lookup(const std::string& phrase_text,
                                        const CategoryPtr& category) const {
    static const std::vector<int> kEmpty;
    auto it = by_pair_.find(pair_key(phrase_text, category));
    return it == by_pair_.end() ? kEmpty : it->second;
}

std::vector<int> Lexicon::lookup_phrase(const std::string& phrase_text) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].phrase_text() == phrase_text) out.push_back(static_cast<int>(i));
    return out;
}

bool Lexicon::contains(const std::string& phrase_text, const CategoryPtr& category,
                       const TermPtr& semantics) const {
    return by_triple_.count(pair_key(phrase_text, category) + "\t" +
                            canonical_key(semantics)) > 0;
}

std::vector<int> Lexicon::sorted_ids() const {
    std::vector<int> ids(entries_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        const auto& ea = entries_[a];
        const auto& eb = entries_[b];
        auto ka = std::make_tuple(ea.phrase_text(), render_category(ea.category),
                                  render_term(ea.semantics));
        auto kb = std::make_tuple(eb.phrase_text(), render_category(eb.category),
                                  render_term(eb.semantics));
        return ka < kb;
    });
    return ids;
}

static std::string format_weight(double w) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", w);
    return buf;
}

std::string Lexicon::to_tsv() const {
    std::ostringstream out;
    for (int id : sorted_ids()) {
        const auto& e = entries_[id];
        out << e.phrase_text() << '\t' << render_category(e.category) << '\t'
            << render_term(e.semantics) << '\t' << format_weight(e.weight) << '\t'
            << provenance_name(e.provenance) << '\n';
    }
    return out.str();
}

Lexicon Lexicon::from_tsv(const std::string& text) {
    Lexicon lex;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::size_t pos = 0;
        while (true) {
            auto tab = line.find('\t', pos);
            if (tab == std::string::npos) {
                cols.push_back(line.substr(pos));
                break;
            }
            cols.push_back(line.substr(pos, tab - pos));
            pos = tab + 1;
        }
        if (cols.size() < 3)
            throw FormatError("lexicon line " + std::to_string(lineno) +
                              ": expected phrase<TAB>category<TAB>term");
        LexiconEntry e;
        std::istringstream words(cols[0]);
        // Phrase tokens are space separated; chunked tokens are re-chunked by
        // the tokenizer, so a flat split is enough here.
        std::string w;
        std::string cur;
        while (words >> w) e.phrase.push_back(w);
        e.category = parse_category(cols[1]);
        e.semantics = parse_term(cols[2]);
        e.weight = cols.size() > 3 && !cols[3].empty() ? std::stod(cols[3]) : 0.1;
        e.provenance = cols.size() > 4 && !cols[4].empty()
                           ? provenance_from_name(cols[4])
                           : Provenance::Inverse;
        lex.add(std::move(e));
    }
    return lex;
}

}  // namespace semparse
