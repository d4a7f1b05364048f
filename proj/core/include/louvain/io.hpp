#pragma once

#include <filesystem>
#include <vector>

#include "louvain/graph.hpp"

namespace louvain {

enum class EdgeListFormat {
  matrix_market,   // %%MatrixMarket matrix coordinate, 1-based ids
  whitespace_tsv,  // "src dst [weight]" per line, 0-based ids, '#' comments
};

// Picks matrix_market for a .mtx extension, whitespace_tsv otherwise.
EdgeListFormat guess_format(const std::filesystem::path& path);

// Throws ParseError with a line number on malformed input, ids out of the
// declared bounds, or negative weights. Missing weights default to 1.
EdgeList load_edge_list(const std::filesystem::path& path, EdgeListFormat format);

// Writes a general coordinate MatrixMarket file; entries are emitted exactly
// as stored (no symmetrization). Weights are printed round-trip exact.
void save_matrix_market(const std::filesystem::path& path, const EdgeList& edges);

void save_whitespace_tsv(const std::filesystem::path& path, const EdgeList& edges);

// One "vertex<TAB>community" line per vertex.
void save_membership_tsv(const std::filesystem::path& path,
                         const std::vector<CommunityId>& membership);

}  // namespace louvain
