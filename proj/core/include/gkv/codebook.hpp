// Copyright 2026 The gkv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GKV_CODEBOOK_HPP
#define GKV_CODEBOOK_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "gkv/types.hpp"

namespace gkv {

/// How the class-label matrix is constructed.
///
/// Orthogonal: QR of a standard-normal matrix, columns orthonormal
///             (requires r >= m).
/// Whitened:   rows of a standard-normal matrix whitened to be
///             orthonormal, then columns normalized (requires r < m).
/// Walsh:      columns of the Sylvester Hadamard matrix scaled by
///             1/sqrt(r); entries bipolar (requires power-of-two r >= m).
/// Gaussian:   i.i.d. standard normal, columns normalized. Kept as the
///             naive baseline that exhibits cross-talk.
enum class CodebookMode { Orthogonal, Whitened, Walsh, Gaussian };

std::string to_string(CodebookMode mode);
CodebookMode codebook_mode_from_string(const std::string &name);

/// Value memory of the distributed scheme: column j is the r-dimensional
/// representation of class j. Immutable after construction; safe to share
/// read-only across threads.
struct LabelCodebook {
  Matrix matrix; // r x m
  CodebookMode mode = CodebookMode::Orthogonal;
  std::uint64_t seed = 0;

  int r() const { return static_cast<int>(matrix.rows()); }
  int m() const { return static_cast<int>(matrix.cols()); }
};

/// Builds an r x m label codebook. Deterministic per (r, m, mode, seed).
/// Throws DimensionError when (r, m) violates the mode constraints and
/// ParameterError on non-positive sizes or m < 2.
LabelCodebook make_codebook(int r, int m, CodebookMode mode,
                            std::uint64_t seed);

/// Maximum absolute off-diagonal entry of the Gram matrix L^T L: the worst
/// pairwise interference between two class labels. Zero for orthonormal
/// codebooks.
double crosstalk(const LabelCodebook &codebook);

namespace detail {
/// Whitened-mode matrix before column normalization: rows orthonormal.
/// Exposed so that invariant stays checkable from the outside.
Matrix whitened_pre_normalization(int r, int m, std::uint64_t seed);
} // namespace detail

/// CSV round-trip for reproducibility audits. Layout: a literal
/// "r,m,mode,seed" header line, one metadata line, then the matrix in
/// row-major order, one matrix row per line.
void export_codebook_csv(const LabelCodebook &codebook, std::ostream &out);
void export_codebook_csv(const LabelCodebook &codebook,
                         const std::string &path);
LabelCodebook import_codebook_csv(std::istream &in);
LabelCodebook import_codebook_csv(const std::string &path);

} // namespace gkv

#endif // GKV_CODEBOOK_HPP
