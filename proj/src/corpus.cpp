#include "semparse/corpus.hpp"

#include <fstream>
#include <sstream>

namespace semparse {

std::vector<CorpusExample> load_corpus(const std::string& text) {
    std::vector<CorpusExample> out;
    std::istringstream in(text);
    std::string line;
    CorpusExample cur;
    auto flush = [&] {
        if (cur.sentence.empty() && cur.logical_form.empty()) return;
        if (cur.sentence.empty() || cur.logical_form.empty())
            throw FormatError("corpus block needs both an S: and an L: line");
        out.push_back(cur);
        cur = {};
    };
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;
        if (line.rfind("S:", 0) == 0) {
            std::size_t i = 2;
            while (i < line.size() && line[i] == ' ') ++i;
            cur.sentence = line.substr(i);
        } else if (line.rfind("L:", 0) == 0) {
            std::size_t i = 2;
            while (i < line.size() && line[i] == ' ') ++i;
            cur.logical_form = line.substr(i);
        } else {
            throw FormatError("corpus line must start with 'S:' or 'L:': " + line);
        }
    }
    flush();
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

}  // namespace semparse
