#include "chainrec/finite_oracle.hpp"

#include <random>
#include <stdexcept>

namespace chainrec {

namespace {

// Positive-length transitive closure by repeated squaring of the boolean
// relation.
std::vector<std::vector<bool>> positive_closure(const FiniteSystem& fs) {
  int n = fs.n;
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j : fs.succ[i]) r[i][j] = true;
  for (int round = 0; (1 << round) <= n; ++round) {
    auto next = r;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (r[i][k])
          for (int j = 0; j < n; ++j)
            if (r[k][j]) next[i][j] = true;
    r = next;
  }
  return r;
}

std::vector<int> chain_omega_states(const FiniteSystem& fs,
                                    const std::vector<std::vector<bool>>& r,
                                    const std::vector<bool>& cyclic, int x) {
  int n = fs.n;
  std::vector<bool> in_k(n, false), out(n, false);
  for (int y = 0; y < n; ++y)
    if (cyclic[y] && (y == x || r[x][y])) in_k[y] = true;
  for (int k = 0; k < n; ++k) {
    if (!in_k[k]) continue;
    out[k] = true;
    for (int z = 0; z < n; ++z)
      if (r[k][z]) out[z] = true;
  }
  std::vector<int> res;
  for (int y = 0; y < n; ++y)
    if (out[y]) res.push_back(y);
  return res;
}

}  // namespace

std::vector<FiniteSystem> enumerate_functional(int n) {
  if (n < 1 || n > 7)
    throw std::out_of_range("enumerate_functional: need 1 <= n <= 7");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= n;
  std::vector<FiniteSystem> out;
  out.reserve(total);
  std::vector<int> digits(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    FiniteSystem fs;
    fs.n = n;
    fs.succ.resize(n);
    for (int i = 0; i < n; ++i) fs.succ[i] = {digits[i]};
    out.push_back(std::move(fs));
    for (int pos = n - 1; pos >= 0; --pos) {
      if (++digits[pos] < n) break;
      digits[pos] = 0;
    }
  }
  return out;
}

FiniteSystem random_total_relation(int n, std::uint64_t seed) {
  if (n < 1) throw std::out_of_range("need n >= 1");
  std::mt19937_64 rng(seed);
  FiniteSystem fs;
  fs.n = n;
  fs.succ.resize(n);
  std::uniform_int_distribution<int> state(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (coin(rng) == 0) fs.succ[i].push_back(j);
    if (fs.succ[i].empty()) fs.succ[i].push_back(state(rng));  // keep total
  }
  return fs;
}

FiniteDecomposition exact_decomposition(const FiniteSystem& fs) {
  int n = fs.n;
  FiniteDecomposition dec;
  dec.reach = positive_closure(fs);
  dec.cyclic.resize(n);
  for (int i = 0; i < n; ++i) dec.cyclic[i] = dec.reach[i][i];

  dec.comp_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (dec.comp_of[i] >= 0) continue;
    int c = static_cast<int>(dec.members.size());
    dec.members.push_back({i});
    dec.comp_of[i] = c;
    for (int j = i + 1; j < n; ++j)
      if (dec.comp_of[j] < 0 && dec.reach[i][j] && dec.reach[j][i]) {
        dec.comp_of[j] = c;
        dec.members[c].push_back(j);
      }
  }

  int ncomp = static_cast<int>(dec.members.size());
  dec.terminal.assign(ncomp, false);
  for (int c = 0; c < ncomp; ++c) {
    int rep = dec.members[c][0];
    if (!dec.cyclic[rep]) continue;
    bool leaks = false;
    for (int i : dec.members[c])
      for (int j = 0; j < n && !leaks; ++j)
        if (dec.reach[i][j] && !dec.reach[j][i]) leaks = true;
    dec.terminal[c] = !leaks;
  }
  return dec;
}

bool verify_lemma_2_1(const FiniteSystem& fs) {
  FiniteDecomposition dec = exact_decomposition(fs);
  for (int x = 0; x < fs.n; ++x) {
    bool ok = false;
    for (int y = 0; y < fs.n && !ok; ++y)
      if ((y == x || dec.reach[x][y]) && dec.terminal[dec.comp_of[y]]) ok = true;
    if (!ok) return false;
  }
  return true;
}

bool verify_lemma_1_1(const FiniteSystem& fs) {
  FiniteDecomposition dec = exact_decomposition(fs);
  for (int x = 0; x < fs.n; ++x) {
    // P1: exactly one cyclic component is reachable, and it is terminal.
    int seen = -1;
    bool unique = true;
    for (int y = 0; y < fs.n; ++y) {
      if (!dec.cyclic[y] || !(y == x || dec.reach[x][y])) continue;
      if (seen < 0)
        seen = dec.comp_of[y];
      else if (dec.comp_of[y] != seen)
        unique = false;
    }
    bool p1 = seen >= 0 && unique && dec.terminal[seen];

    // P2: chain-omega is contained in a single component.
    std::vector<int> omega = chain_omega_states(fs, dec.reach, dec.cyclic, x);
    bool p2 = !omega.empty();
    for (int y : omega)
      if (dec.comp_of[y] != dec.comp_of[omega.front()]) p2 = false;

    // P3: chain-omega induces a strongly connected subrelation.
    bool p3 = !omega.empty();
    for (int u : omega)
      for (int v : omega)
        if (u != v && !(dec.reach[u][v] && dec.reach[v][u])) p3 = false;

    if (p1 != p2 || p2 != p3) return false;
  }
  return true;
}

bool verify_maximality(const FiniteSystem& fs) {
  FiniteDecomposition dec = exact_decomposition(fs);
  int ncomp = static_cast<int>(dec.members.size());
  for (int c = 0; c < ncomp; ++c) {
    // maximal: C <= D implies C == D in the condensation order
    bool maximal = true;
    int rep = dec.members[c][0];
    for (int j = 0; j < fs.n; ++j)
      if (dec.reach[rep][j] && !dec.reach[j][rep]) maximal = false;
    bool cyclic_comp = dec.cyclic[rep];
    if (dec.terminal[c] != (maximal && cyclic_comp)) return false;
  }
  return true;
}

}  // namespace chainrec
