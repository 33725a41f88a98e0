#include "pbexact/simplex.hpp"

#include "pbexact/errors.hpp"

#include <cstddef>

namespace pbexact {

std::optional<std::vector<Rat>> solve_feasibility(const std::vector<std::vector<Rat>>& a_eq,
                                                  const std::vector<Rat>& b_eq,
                                                  const std::vector<std::vector<Rat>>& a_le,
                                                  const std::vector<Rat>& b_le, int num_vars) {
  if (a_eq.size() != b_eq.size() || a_le.size() != b_le.size())
    throw InputError("constraint matrix and right-hand side sizes differ");
  size_t rows = a_eq.size() + a_le.size();
  size_t slacks = a_le.size();

  // Columns: structural | slack | artificial | rhs. Every row gets rhs >= 0;
  // rows whose slack cannot start basic get an artificial instead.
  std::vector<std::vector<Rat>> tab(rows);
  std::vector<int> basis(rows, -1);
  std::vector<bool> needs_art(rows, false);
  size_t art = 0;
  for (size_t r = 0; r < rows; ++r) {
    bool is_le = r >= a_eq.size();
    const auto& src = is_le ? a_le[r - a_eq.size()] : a_eq[r];
    Rat b = is_le ? b_le[r - a_eq.size()] : b_eq[r];
    if ((int)src.size() != num_vars) throw InputError("constraint row width mismatch");
    bool flip = b < 0;
    tab[r].assign(num_vars + slacks + 1, Rat(0));
    for (int j = 0; j < num_vars; ++j) tab[r][j] = flip ? -src[j] : src[j];
    if (is_le) tab[r][num_vars + (r - a_eq.size())] = flip ? Rat(-1) : Rat(1);
    tab[r].back() = flip ? -b : b;
    if (is_le && !flip) {
      basis[r] = num_vars + (int)(r - a_eq.size());
    } else {
      needs_art[r] = true;
      ++art;
    }
  }
  size_t width = num_vars + slacks + art + 1; // + rhs
  size_t next_art = num_vars + slacks;
  for (size_t r = 0; r < rows; ++r) {
    Rat b = tab[r].back();
    tab[r].pop_back();
    tab[r].resize(width - 1, Rat(0));
    tab[r].push_back(b);
    if (needs_art[r]) {
      tab[r][next_art] = 1;
      basis[r] = (int)next_art++;
    }
  }

  // Phase-1 objective: minimize the artificial sum; price out basic ones.
  std::vector<Rat> obj(width, Rat(0));
  for (size_t j = num_vars + slacks; j + 1 < width; ++j) obj[j] = 1;
  for (size_t r = 0; r < rows; ++r)
    if (needs_art[r])
      for (size_t j = 0; j < width; ++j) obj[j] -= tab[r][j];

  while (true) {
    int enter = -1;
    for (size_t j = 0; j + 1 < width; ++j)
      if (obj[j] < 0) {
        enter = (int)j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best_ratio;
    for (size_t r = 0; r < rows; ++r) {
      if (tab[r][enter] <= 0) continue;
      Rat ratio = tab[r].back() / tab[r][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = (int)r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw InternalError("phase-1 objective unbounded");
    Rat pivot = tab[leave][enter];
    for (Rat& x : tab[leave]) x /= pivot;
    for (size_t r = 0; r < rows; ++r) {
      if ((int)r == leave || tab[r][enter] == 0) continue;
      Rat factor = tab[r][enter];
      for (size_t j = 0; j < width; ++j) tab[r][j] -= factor * tab[leave][j];
    }
    if (obj[enter] != 0) {
      Rat factor = obj[enter];
      for (size_t j = 0; j < width; ++j) obj[j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  for (size_t r = 0; r < rows; ++r)
    if (basis[r] >= (int)(num_vars + slacks) && tab[r].back() != 0)
      return std::nullopt; // artificial stuck positive: infeasible

  std::vector<Rat> x(num_vars, Rat(0));
  for (size_t r = 0; r < rows; ++r)
    if (basis[r] >= 0 && basis[r] < num_vars) x[basis[r]] = tab[r].back();
  return x;
}

} // namespace pbexact
