#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "critgroup/abelian_group.hpp"
#include "critgroup/graph.hpp"
#include "critgroup/int_matrix.hpp"

namespace critgroup {

/// One unimodular reduction step: result == transform_left * input *
/// transform_right, recomputed and checked at construction.
struct StageReport {
  std::string stage_name;
  IntMatrix input;
  IntMatrix transform_left;
  IntMatrix transform_right;
  IntMatrix result;
  bool replay_ok = false;
  bool unimodular_ok = false;
  bool cokernel_ok = false;
  std::vector<Integer> factors_before;
  std::vector<Integer> factors_after;

  bool ok() const { return replay_ok && unimodular_ok && cokernel_ok; }
};

/// Multiplies out, then fills in every check field.
StageReport make_stage(std::string name, IntMatrix input, IntMatrix left, IntMatrix right);

struct TransformPair {
  IntMatrix left;
  IntMatrix right;
};

/// The 2x2 building blocks of the stage-two transforms and of the banded
/// matrix they produce.
struct BlockConstants {
  IntMatrix A;  // [[0,0],[1,0]]
  IntMatrix B;  // [[1,0],[0,0]]
  IntMatrix C;  // [[1,0],[0,-1]]
  IntMatrix D;  // [[0,-1],[0,0]]
  IntMatrix R;  // [[1,0],[1,0]]
  IntMatrix S;  // [[0,1],[0,1]]
  IntMatrix T;  // [[0,0],[0,1]]
};
const BlockConstants& block_constants();

struct EntryDiff {
  std::size_t row;
  std::size_t col;
  Integer expected;
  Integer actual;
};
std::vector<EntryDiff> entry_differences(const IntMatrix& expected, const IntMatrix& actual);

/// Upper triangular with band width `width`: (i, j) == 0 for j < i and
/// j >= i + width.
bool is_upper_banded(const IntMatrix& m, std::size_t width);

// --- stage one -------------------------------------------------------------

/*
 * Block-diagonal P1, Q1 with one n_i x n_i block per part.  The P block takes
 * successive row differences and replaces the last row by
 * (1 - n_i, 1, ..., 1); the Q block is lower-triangular ones with last row
 * (1, 2 - n_i, ..., -2, -1, 1).  P1 * L * Q1 leaves N_i on the diagonal and
 * moves every coupling to the first row of each part, into the first and
 * last column of the neighbouring part.
 */
TransformPair stage1_transforms(const LayeredSpec& spec);

/// The matrix stage one must produce, written down directly: N_i on the
/// diagonal, and in the first row of part i the entries -n_j (first column of
/// part j) and -1 (last column of part j) for j = i +- 1.  A one-vertex part
/// has a single column, holding -1.
IntMatrix stage1_template(const LayeredSpec& spec);

/// Throws StructuralError naming the first entry that differs from
/// stage1_template.
StageReport stage1_reduce(const LayeredSpec& spec);

struct L3Extraction {
  IntMatrix l3;                           // 2k x 2k
  std::vector<Integer> middle_factors;    // N_i, n_i - 2 times each
  std::vector<std::size_t> kept_indices;  // first and last vertex of each part
};

/// Keeps the first and last row/column of every part of the stage-one
/// result.  The n_i - 2 dropped rows and columns carry only their diagonal
/// N_i, which is checked.  Requires all n_i >= 2.
L3Extraction extract_L3(const LayeredSpec& spec);
L3Extraction extract_L3(const LayeredSpec& spec, const IntMatrix& stage1_result);

/// cokernel(L(G)) assembled as (⊕ Z/N_i^(n_i - 2)) ⊕ coker(L3).  Includes
/// the free Z.
AbelianGroup proposition1_decompose(const LayeredSpec& spec);

// --- stage two -------------------------------------------------------------

/// Block lower-Hessenberg P2 (rows built from B, A, n_j B - D, n_j R + S and
/// n_k R + T) and block-diagonal Q2 = diag(I - n_i A).  Defined for k >= 2.
TransformPair stage2_transforms(const LayeredSpec& spec);

/// P2 * L3 * Q2, checked to be upper triangular with band width 5.  Requires
/// k >= 4; throws StructuralError on a band violation.
StageReport compute_L4(const LayeredSpec& spec);

/// The banded matrix in its reference block form, for comparison only.  It
/// differs from compute_L4 in the sign of the leading block and in the blocks
/// two steps right of the diagonal (C there, -T in the computed matrix).
IntMatrix printed_stage2_template(const LayeredSpec& spec);

// --- k-specific final reduction --------------------------------------------

/// Reference input of the final step for k = 4 and k = 5, as displayed.
IntMatrix printed_k_specific_input(const LayeredSpec& spec);
/// Reference P3, Q3 for k = 2, 4, 5.
TransformPair printed_final_transforms(const LayeredSpec& spec);
/// Reference output of the final step for k = 2, 4, 5.
IntMatrix printed_final_result(const LayeredSpec& spec);
/// The 3x3 block of the five-part split exactly as displayed.
IntMatrix printed_l7(const LayeredSpec& spec);

struct FinalReduction {
  std::vector<StageReport> stages;  // printed P3/Q3, then completion
  IntMatrix after_printed;          // P3 * input * Q3
  std::vector<EntryDiff> printed_mismatches;  // against printed_final_result
  IntMatrix result;                 // diagonal (k = 2, 4) or L6 ⊕ L7 (k = 5)
  std::vector<Integer> l6_diagonal;  // k = 5 only
  std::optional<IntMatrix> l7;       // k = 5 only

  bool ok() const;
};

/*
 * Applies the reference P3, Q3 to the computed input of the final step (L3
 * for k = 2, the banded stage-two matrix for k = 4, 5), then finishes with a
 * recorded completion step:
 *   k = 2, 4:  clear rows and columns through pivots that divide their whole
 *              row and column, then permute rows onto the diagonal;
 *   k = 5:     clear the unit pivots, absorb the remaining coupling with one
 *              column move, and permute to the block form [L6 0; 0 L7].
 * Requires k in {2, 4, 5} and all n_i >= 2.
 */
FinalReduction final_reduce_k(const LayeredSpec& spec);

// --- whole pipeline --------------------------------------------------------

struct PipelineRun {
  std::string route;                 // e.g. "k=5 printed", "k=3 as 4,3"
  LayeredSpec reduced_spec;          // the spec actually reduced
  std::vector<StageReport> stages;
  std::vector<Integer> middle_factors;
  AbelianGroup cokernel;             // Z ⊕ K(G)

  AbelianGroup critical_group() const { return cokernel.drop_free(1); }
  bool ok() const;
};

/// Stage one, L3, then: k = 2 final step; k = 3 rerouted through the
/// bipartite spec (n1 + n3, n2); k = 4, 5 stage two and final step; k >= 6
/// stage two followed by the generic SNF engine.  Requires all n_i >= 2.
PipelineRun run_pipeline(const LayeredSpec& spec);

}  // namespace critgroup
