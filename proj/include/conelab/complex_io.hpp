#pragma once

// Plain-text cone complex files:
//
//   vertices: a b c d
//   simplex: a b
//   simplex: b c
//
// Blank lines and lines starting with '#' are ignored.

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/conemodel.hpp"

namespace conelab {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline ConeComplexSpec parse_cone_complex(std::istream& in) {
    std::vector<std::string> labels;
    std::map<std::string, VertexId> index;
    std::vector<std::vector<VertexId>> simplices;
    bool have_vertices = false;
    int last_line = 0;

    std::string raw;
    for (int lineno = 1; std::getline(in, raw); ++lineno) {
        last_line = lineno;
        std::istringstream ls(raw);
        std::string key;
        if (!(ls >> key) || key.front() == '#') continue;
        std::vector<std::string> words;
        for (std::string w; ls >> w;) words.push_back(w);

        if (key == "vertices:") {
            if (have_vertices) throw ParseError(lineno, "second 'vertices:' line");
            if (words.empty()) throw ParseError(lineno, "no vertices listed");
            for (const auto& w : words) {
                if (!index.emplace(w, labels.size()).second)
                    throw ParseError(lineno, "duplicate vertex '" + w + "'");
                labels.push_back(w);
            }
            have_vertices = true;
        } else if (key == "simplex:") {
            if (!have_vertices) throw ParseError(lineno, "'simplex:' before 'vertices:'");
            if (words.empty()) throw ParseError(lineno, "empty simplex");
            std::vector<VertexId> s;
            for (const auto& w : words) {
                auto it = index.find(w);
                if (it == index.end()) throw ParseError(lineno, "unknown vertex '" + w + "'");
                s.push_back(it->second);
            }
            if (!simplices.empty() && s.size() != simplices.front().size())
                throw ParseError(lineno, "simplex has " + std::to_string(s.size()) + " vertices, expected " +
                                             std::to_string(simplices.front().size()));
            auto key = s;
            std::sort(key.begin(), key.end());
            if (std::adjacent_find(key.begin(), key.end()) != key.end())
                throw ParseError(lineno, "repeated vertex inside a simplex");
            for (const auto& prev : simplices) {
                auto other = prev;
                std::sort(other.begin(), other.end());
                if (other == key) throw ParseError(lineno, "duplicate maximal simplex");
            }
            simplices.push_back(std::move(s));
        } else {
            throw ParseError(lineno, "expected 'vertices:' or 'simplex:', got '" + key + "'");
        }
    }
    if (!have_vertices) throw ParseError(last_line, "missing 'vertices:' line");
    if (simplices.empty()) throw ParseError(last_line, "no 'simplex:' lines");
    try {
        return ConeComplexSpec(std::move(labels), std::move(simplices));
    } catch (const std::invalid_argument& e) {
        throw ParseError(last_line, e.what());
    }
}

inline ConeComplexSpec load_cone_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cone complex file '" + path + "'");
    return parse_cone_complex(in);
}

}  // namespace conelab
