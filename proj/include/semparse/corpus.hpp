#pragma once

#include <string>
#include <vector>

#include "semparse/errors.hpp"

namespace semparse {

struct CorpusExample {
    std::string sentence;
    std::string logical_form;
};

/// Blocks of `S: <sentence>` / `L: <logical form>` separated by blank lines.
std::vector<CorpusExample> load_corpus(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace semparse
