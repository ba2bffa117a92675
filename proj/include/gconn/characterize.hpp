#ifndef GCONN_CHARACTERIZE_HPP
#define GCONN_CHARACTERIZE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gconn/graph.hpp"
#include "gconn/steiner.hpp"

namespace gconn {

/// Does kappa_k(K_n \ M) = n - k/2 - 1 by the even-k characterization?
/// True iff 1 <= Delta(K_n[M]) <= k/2 and 1 <= |M| <= k-1.
/// k must be even and 4 <= k <= n.
bool predicate_theorem2(int n, int k, const DeletionSet& m);

/// Does lambda_k(K_n \ M) = n - k/2 - 1? True iff either
///   (1) Delta(K_n[M]) = 1 and 1 <= |M| <= floor(n/2), or
///   (2) 2 <= Delta(K_n[M]) <= k/2 and 1 <= |M| <= k-1.
/// k must be even; k = 2 is accepted (condition (1) then characterizes
/// lambda_2 = n-2).
bool predicate_theorem3(int n, int k, const DeletionSet& m);

/// Does K_n \ M attain the maximum n - ceil(k/2)? Even k: M empty;
/// odd k: |M| <= (k-1)/2. Requires 3 <= k <= n.
bool predicate_lemma4(int n, int k, const DeletionSet& m);

/// n - 1 - Delta(K_n[M]): the minimum-degree upper bound on lambda_k(K_n\M).
int degree_upper_bound(int n, const DeletionSet& m);

struct DeletionSetFilter {
  int min_size = 0;
  int max_size = 1 << 30;
  int min_max_degree = 0;
  int max_max_degree = 1 << 30;
};

/// All deletion sets of K_n matching the filter. With up_to_iso, one
/// representative per isomorphism class is returned in canonical form (the
/// lexicographically least edge list over all vertex permutations); this
/// brute-force canonicalization caps n at 8. Output is ordered by
/// (|M|, canonical edge list).
std::vector<DeletionSet> enumerate_deletion_sets(int n, bool up_to_iso,
                                                 const DeletionSetFilter& filter = {});

/// Canonical form of one deletion set (lexicographically least relabeling).
DeletionSet canonical_deletion_set(const DeletionSet& m);

struct CharacterizationCase {
  DeletionSet m;        // canonical representative
  bool predicate = false;
  int solver_value = 0;  // kappa_k or lambda_k of K_n \ M
  bool agree = false;
  bool vacuous = false;  // K_n \ M disconnected, settled by the 0-convention
};

struct CharacterizationReport {
  int n = 0;
  int k = 0;
  int theorem = 0;  // 2 or 3
  DisjointMode mode = DisjointMode::kInternal;
  int classes_checked = 0;
  std::vector<CharacterizationCase> cases;
  std::vector<CharacterizationCase> counterexamples;
  long long wall_time_ms = 0;

  bool all_agree() const { return counterexamples.empty(); }
};

/// Exhaustive iff-check of Theorem 2 (kappa, `which` = 2) or Theorem 3
/// (lambda, `which` = 3) at (n, k): every isomorphism class of deletion sets
/// is swept, the predicate verdict is compared against the exact solver, and
/// every disagreement is recorded. The class sweep fans out over `threads`
/// workers; the report is assembled in class order and is identical for
/// every thread count.
CharacterizationReport verify_theorem(int n, int k, int which, int threads = 1);

std::string format_report(const CharacterizationReport& report);

}  // namespace gconn

#endif
