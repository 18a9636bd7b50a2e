#pragma once

#include <iosfwd>
#include <string>

#include "subrank/cw.hpp"
#include "subrank/gf2.hpp"
#include "subrank/hypergraph.hpp"

namespace subrank::io {

// Edge-list text: line 1 "k n_1 ... n_k", then one edge of k 1-based
// integers per line.
hg::KGraph read_edge_list_text(std::istream& in);
void write_edge_list_text(std::ostream& out, const hg::KGraph& g);

// JSON equivalent: {"order":k, "sizes":[...], "edges":[[...],...]}.
hg::KGraph read_edge_list_json(std::istream& in);
void write_edge_list_json(std::ostream& out, const hg::KGraph& g);

// Reads either format; a leading '{' selects JSON.
hg::KGraph load_edge_list(const std::string& path);

// Subspace text: first line "n d", then d rows of n characters in {0,1};
// any spanning set is accepted and canonicalized.
gf2::Subspace read_subspace_text(std::istream& in);
void write_subspace_text(std::ostream& out, const gf2::Subspace& v);
gf2::Subspace load_subspace(const std::string& path);

// Alpha maps: one line per coordinate, "i: v->a v->a ...", 1-based i and v.
cw::AlphaMaps read_alpha_maps(std::istream& in);
void write_alpha_maps(std::ostream& out, const cw::AlphaMaps& alpha);
cw::AlphaMaps load_alpha_maps(const std::string& path);

}  // namespace subrank::io
