#include "vforge/boolean/kmap.hpp"

#include <stdexcept>
#include <utility>

#include "vforge/boolean/gray.hpp"
#include "vforge/core/rng.hpp"

namespace vforge::boolean {

std::string mutation_name(const Mutation& m) {
  switch (m.kind) {
    case MutationKind::Transpose: return "transpose";
    case MutationKind::SwapAdjacentRows: return "swap_rows(" + std::to_string(m.index) + ")";
    case MutationKind::SwapAdjacentCols: return "swap_cols(" + std::to_string(m.index) + ")";
  }
  return "?";
}

std::uint32_t KMapView::assignment_at(std::size_t row, std::size_t col) const {
  const unsigned n = static_cast<unsigned>(var_names.size());
  std::uint32_t x = 0;
  auto place = [&](const std::vector<unsigned>& vars, const std::string& label) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (label[i] == '1') x |= 1u << (n - 1 - vars[i]);
  };
  place(row_vars, row_labels.at(row));
  place(col_vars, col_labels.at(col));
  return x;
}

std::string KMapView::render() const {
  std::string row_names, col_names;
  for (unsigned v : row_vars) row_names += var_names[v];
  for (unsigned v : col_vars) col_names += var_names[v];

  std::string out = "// " + std::string(row_names.size(), ' ') + "  " + col_names + "\n";
  out += "// " + row_names;
  for (const auto& label : col_labels) {
    out += std::string(label.size() < 4 ? 4 - label.size() : 1, ' ');
    out += label;
  }
  out += '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    out += "// " + row_labels[r];
    for (std::size_t c = 0; c < cols(); ++c) {
      out += " | ";
      out += cell_char(grid[r][c]);
    }
    out += '\n';
  }
  return out;
}

namespace {

void transpose(KMapView& v) {
  std::swap(v.row_vars, v.col_vars);
  std::swap(v.row_labels, v.col_labels);
  std::vector<std::vector<Cell>> t(v.row_labels.size(), std::vector<Cell>(v.col_labels.size()));
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t[r].size(); ++c) t[r][c] = v.grid[c][r];
  v.grid = std::move(t);
}

}  // namespace

KMapView render_kmap(const FunctionSpec& spec, std::span<const MutationKind> mutations,
                     std::uint64_t rng_seed) {
  const unsigned n = spec.num_vars();
  const unsigned row_bits = (n + 1) / 2;
  const unsigned col_bits = n - row_bits;

  KMapView v;
  v.var_names = spec.var_names();
  for (unsigned i = 0; i < row_bits; ++i) v.row_vars.push_back(i);
  for (unsigned i = row_bits; i < n; ++i) v.col_vars.push_back(i);
  v.row_labels = gray_sequence(row_bits);
  v.col_labels = gray_sequence(col_bits);
  v.grid.assign(v.row_labels.size(), std::vector<Cell>(v.col_labels.size()));
  for (std::size_t r = 0; r < v.rows(); ++r)
    for (std::size_t c = 0; c < v.cols(); ++c) v.grid[r][c] = spec.at(v.assignment_at(r, c));

  Rng rng(rng_seed);
  for (MutationKind kind : mutations) {
    Mutation m{kind, 0};
    switch (kind) {
      case MutationKind::Transpose:
        transpose(v);
        break;
      case MutationKind::SwapAdjacentRows:
        m.index = static_cast<unsigned>(rng.below(v.rows() - 1));
        std::swap(v.row_labels[m.index], v.row_labels[m.index + 1]);
        std::swap(v.grid[m.index], v.grid[m.index + 1]);
        break;
      case MutationKind::SwapAdjacentCols:
        m.index = static_cast<unsigned>(rng.below(v.cols() - 1));
        std::swap(v.col_labels[m.index], v.col_labels[m.index + 1]);
        for (auto& row : v.grid) std::swap(row[m.index], row[m.index + 1]);
        break;
    }
    v.mutation_log.push_back(m);
  }
  return v;
}

std::vector<MutationKind> sample_mutation_plan(std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  std::vector<MutationKind> plan;
  if (rng.chance(0.5)) plan.push_back(MutationKind::Transpose);
  const auto swaps = rng.below(3);
  for (std::uint64_t i = 0; i < swaps; ++i)
    plan.push_back(rng.chance(0.5) ? MutationKind::SwapAdjacentRows
                                   : MutationKind::SwapAdjacentCols);
  return plan;
}

FunctionSpec readback(const KMapView& view) {
  const std::size_t size = std::size_t{1} << view.var_names.size();
  std::vector<Cell> cells(size, Cell::Zero);
  std::vector<bool> seen(size, false);
  for (std::size_t r = 0; r < view.rows(); ++r) {
    for (std::size_t c = 0; c < view.cols(); ++c) {
      const auto x = view.assignment_at(r, c);
      if (seen[x]) throw std::logic_error("readback: assignment covered twice");
      seen[x] = true;
      cells[x] = view.grid[r][c];
    }
  }
  for (bool s : seen)
    if (!s) throw std::logic_error("readback: assignment not covered");
  return FunctionSpec(view.var_names, std::move(cells));
}

}  // namespace vforge::boolean
