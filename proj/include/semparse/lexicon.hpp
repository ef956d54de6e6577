#pragma once

#include <map>
#include <string>
#include <vector>

#include "semparse/category.hpp"
#include "semparse/term.hpp"

namespace semparse {

enum class Provenance { InitialC, InitialN, Inverse, Generalized, Trivial };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

struct LexiconEntry {
    std::vector<std::string> phrase;  // one token per word; chunks keep spaces
    CategoryPtr category;
    TermPtr semantics;
    double weight = 0.1;
    Provenance provenance = Provenance::Inverse;

    std::string phrase_text() const;
};

/// Append-only entry store; (phrase, category, semantics) triples are unique
/// and entry indices double as feature ids.
class Lexicon {
public:
    /// Returns the entry id; re-adding an existing triple keeps the stored
    /// weight and returns the old id.
    int add(LexiconEntry entry);

    const std::vector<int>& lookup(const std::string& phrase_text,
                                   const CategoryPtr& category) const;
    std::vector<int> lookup_phrase(const std::string& phrase_text) const;
    bool contains(const std::string& phrase_text, const CategoryPtr& category,
                  const TermPtr& semantics) const;

    std::size_t size() const { return entries_.size(); }
    const LexiconEntry& entry(int id) const { return entries_[id]; }
    const std::vector<LexiconEntry>& entries() const { return entries_; }
    double weight(int id) const { return entries_[id].weight; }
    void set_weight(int id, double w) { entries_[id].weight = w; }

    /// Ids ordered by (phrase, category text, term text) for stable output.
    std::vector<int> sorted_ids() const;

    std::string to_tsv() const;
    static Lexicon from_tsv(const std::string& text);

private:
    static std::string pair_key(const std::string& phrase, const CategoryPtr& cat);
    std::vector<LexiconEntry> entries_;
    std::map<std::string, std::vector<int>> by_pair_;
    std::map<std::string, int> by_triple_;
};

}  // namespace semparse
