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

#ifndef GKV_DISTRIBUTED_MEMORY_HPP
#define GKV_DISTRIBUTED_MEMORY_HPP

#include <iosfwd>
#include <string>

#include "gkv/codebook.hpp"
#include "gkv/support_set.hpp"
#include "gkv/types.hpp"

namespace gkv {

/// Generalized key memory: the r x d superposition of outer products
/// between class-label representations and support vectors. Its shape is
/// decoupled from the number of stored vectors; r is the redundancy knob.
///
/// Real-precision memories accept further rank-1 updates; quantization
/// freezes them. Immutable memories are read-shareable across threads.
struct DistributedKeyMemory {
  Matrix matrix; // r x d
  Precision precision = Precision::Real;
  int count = 0; // number of superposed support vectors

  int r() const { return static_cast<int>(matrix.rows()); }
  int d() const { return static_cast<int>(matrix.cols()); }
};

/// Sums L_{c(i)} K_i^T over the support set. The result is Real precision
/// with count = mn; quantize afterwards with bipolarize(). Throws
/// ValidationError when a class label falls outside the codebook.
DistributedKeyMemory build_distributed(const SupportSet &support,
                                       const LabelCodebook &codebook);

/// Adds one association: matrix += L_{class} * support_vector^T. Sequential
/// updates from an empty memory reproduce build_distributed exactly (same
/// accumulation order). Throws StateError on a quantized memory.
void update(DistributedKeyMemory &memory, const LabelCodebook &codebook,
            const Vector &support_vector, int class_label);

/// Entrywise sign quantization (sign(0) = +1), or its {0,1} image for
/// Binary. The memory is frozen afterwards; quantizing twice is a
/// StateError.
DistributedKeyMemory bipolarize(const DistributedKeyMemory &memory,
                                Precision target);

/// gamma = K q (an r-vector), s = L^T gamma, argmax with lowest-index
/// tie-break. Identity sharpening is built in.
ClassScores infer_distributed(const DistributedKeyMemory &memory,
                              const LabelCodebook &codebook,
                              const Vector &query);

/// CSV export (header "r,d,precision", then row-major entries) for
/// cross-implementation checks.
void export_memory_csv(const DistributedKeyMemory &memory, std::ostream &out);
void export_memory_csv(const DistributedKeyMemory &memory,
                       const std::string &path);

} // namespace gkv

#endif // GKV_DISTRIBUTED_MEMORY_HPP
