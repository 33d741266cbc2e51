#pragma once

#include <cstdint>
#include <vector>

// Brute-force verification of the order-theoretic lemmas on all small
// finite dynamical systems (total successor relations). Everything here is
// computed by boolean transitive closure, independently of the Tarjan path
// used by the box pipeline.

namespace chainrec {

struct FiniteSystem {
  int n = 1;
  std::vector<std::vector<int>> succ;  // nonempty successor set per state
};

struct FiniteDecomposition {
  std::vector<int> comp_of;             // per state
  std::vector<std::vector<int>> members;
  std::vector<bool> cyclic;             // state reaches itself
  std::vector<bool> terminal;           // cyclic and no outside successor
  std::vector<std::vector<bool>> reach; // positive transitive closure
};

// All n^n functional systems in lexicographic order; 1 <= n <= 7.
std::vector<FiniteSystem> enumerate_functional(int n);

// Seeded random total relation on n states.
FiniteSystem random_total_relation(int n, std::uint64_t seed);

FiniteDecomposition exact_decomposition(const FiniteSystem& fs);

// Every state reaches some terminal component.
bool verify_lemma_2_1(const FiniteSystem& fs);

// Per state: (unique reachable cyclic component, and it is terminal)
// <=> chain-omega contained in one component <=> chain-omega induces a
// strongly connected subrelation.
bool verify_lemma_1_1(const FiniteSystem& fs);

// Terminal components coincide with the maximal ones in the condensation
// order.
bool verify_maximality(const FiniteSystem& fs);

}  // namespace chainrec
