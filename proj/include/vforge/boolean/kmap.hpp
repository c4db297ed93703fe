#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vforge/boolean/function_spec.hpp"

namespace vforge::boolean {

enum class MutationKind { Transpose, SwapAdjacentRows, SwapAdjacentCols };

struct Mutation {
  MutationKind kind = MutationKind::Transpose;
  /// For swaps: positions index and index + 1 are exchanged.
  unsigned index = 0;
  bool operator==(const Mutation&) const = default;
};

std::string mutation_name(const Mutation& m);

/// Grid view of a function. Row/column labels are bit strings over row_vars /
/// col_vars (most significant first). Without mutations both label sequences
/// are Gray sequences.
struct KMapView {
  std::vector<std::string> var_names;
  std::vector<unsigned> row_vars;
  std::vector<unsigned> col_vars;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<Cell>> grid;
  std::vector<Mutation> mutation_log;

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return col_labels.size(); }

  /// Assignment index addressed by the labels of (row, col).
  std::uint32_t assignment_at(std::size_t row, std::size_t col) const;

  /// Comment-prefixed grid, e.g.
  ///   //     c
  ///   // ab   0   1
  ///   // 00 | 1 | 0
  std::string render() const;
};

/// Builds the map (first ceil(n/2) variables on rows, Gray labels) and applies
/// `mutations` in order. Swap positions are drawn from rng_seed; the concrete
/// positions land in mutation_log.
KMapView render_kmap(const FunctionSpec& spec, std::span<const MutationKind> mutations,
                     std::uint64_t rng_seed);

/// Random mutation plan: optional transpose plus zero to two adjacent swaps.
std::vector<MutationKind> sample_mutation_plan(std::uint64_t rng_seed);

/// Rebuilds the cell table by reading every grid cell through its labels.
FunctionSpec readback(const KMapView& view);

}  // namespace vforge::boolean
