#pragma once

// Lower-bound gadget graphs built from a pair of k*k-bit strings, plus the
// check that each one separates intersecting from disjoint inputs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congest/graph.hpp"

namespace congest {

enum class GadgetFamily { dirw_rpaths, dirunw_rpaths, undir_rpaths, dir_mwc, undirw_mwc, qcycle };

const char* to_string(GadgetFamily f);
std::optional<GadgetFamily> parse_family(const std::string& name);

struct GadgetSpec {
    GadgetFamily family = GadgetFamily::dir_mwc;
    int k = 2;
    // Bit (i, j), 1-based, lives at position (i-1)*k + j - 1 of these vectors.
    std::vector<char> sa;
    std::vector<char> sb;
    int q = 4;          // qcycle only
    bool sink = false;  // dirw-rpaths only
    // dirunw-rpaths: base network G and subgraph H over the same k vertices.
    // undir-rpaths: base graph G. Both use (s, t) inside the base.
    std::optional<Graph> base;
    std::optional<Graph> sub;
    Vertex s = 0;
    Vertex t = 0;

    bool bit_a(int i, int j) const { return sa[(i - 1) * k + j - 1] != 0; }
    bool bit_b(int i, int j) const { return sb[(i - 1) * k + j - 1] != 0; }
    bool intersecting() const;
    void validate() const;
};

struct Gadget {
    Graph graph;
    std::optional<PathSpec> path;  // rpaths families
};

Gadget gen_gadget(const GadgetSpec& spec);

// Random strings; `intersect` forces exactly one common position, otherwise
// the strings are disjoint. For the two base-graph families a random base
// (and subgraph) of k vertices is drawn instead.
GadgetSpec random_gadget_spec(GadgetFamily family, int k, std::uint64_t seed, bool intersect, int q = 4,
                              bool sink = true);

struct DichotomyVerdict {
    bool intersecting = false;
    Weight measured = 0;    // the value the dichotomy is stated for
    std::string predicted;  // human-readable side, e.g. "<= 62"
    bool holds = false;
};

DichotomyVerdict check_dichotomy(const GadgetSpec& spec, const Gadget& g);

}  // namespace congest
