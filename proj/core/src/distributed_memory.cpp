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

#include "gkv/distributed_memory.hpp"

#include <fstream>
#include <string>

#include "gkv/errors.hpp"
#include "gkv/format.hpp"
#include "gkv/quantize.hpp"

namespace gkv {

DistributedKeyMemory build_distributed(const SupportSet &support,
                                       const LabelCodebook &codebook) {
  support.validate();
  if (codebook.m() != support.m)
    throw ValidationError("distributed memory: codebook has " +
                          std::to_string(codebook.m()) +
                          " classes, support set has " +
                          std::to_string(support.m));

  DistributedKeyMemory memory;
  memory.matrix = Matrix::Zero(codebook.r(), support.d);
  memory.precision = Precision::Real;
  memory.count = 0;
  for (int i = 0; i < support.count(); ++i)
    update(memory, codebook, support.vectors.col(i),
           support.class_index[static_cast<std::size_t>(i)]);
  return memory;
}

void update(DistributedKeyMemory &memory, const LabelCodebook &codebook,
            const Vector &support_vector, int class_label) {
  if (memory.precision != Precision::Real)
    throw StateError("distributed memory: quantized memory is frozen");
  if (class_label < 1 || class_label > codebook.m())
    throw ValidationError("distributed memory: class " +
                          std::to_string(class_label) +
                          " outside codebook range 1.." +
                          std::to_string(codebook.m()));
  if (support_vector.size() != memory.matrix.cols())
    throw DimensionError("distributed memory: support vector length " +
                         std::to_string(support_vector.size()) +
                         " != stored dimension " +
                         std::to_string(memory.matrix.cols()));
  if (codebook.r() != memory.r())
    throw DimensionError("distributed memory: codebook r mismatch");

  memory.matrix.noalias() +=
      codebook.matrix.col(class_label - 1) * support_vector.transpose();
  ++memory.count;
}

DistributedKeyMemory bipolarize(const DistributedKeyMemory &memory,
                                Precision target) {
  if (memory.precision != Precision::Real)
    throw StateError("distributed memory: already quantized");
  if (target == Precision::Real)
    throw ParameterError("bipolarize target must be Bipolar or Binary");

  DistributedKeyMemory out;
  out.matrix = quantize(memory.matrix, target);
  out.precision = target;
  out.count = memory.count;
  return out;
}

ClassScores infer_distributed(const DistributedKeyMemory &memory,
                              const LabelCodebook &codebook,
                              const Vector &query) {
  if (query.size() != memory.d())
    throw DimensionError("infer: query length " +
                         std::to_string(query.size()) + " != key dimension " +
                         std::to_string(memory.d()));
  if (codebook.r() != memory.r())
    throw DimensionError("infer: codebook r " + std::to_string(codebook.r()) +
                         " != memory r " + std::to_string(memory.r()));

  const Vector gamma = memory.matrix * query; // identity sharpening
  ClassScores result;
  result.scores = codebook.matrix.transpose() * gamma;
  result.predicted = argmax_class(result.scores);
  return result;
}

void export_memory_csv(const DistributedKeyMemory &memory, std::ostream &out) {
  out << "r,d,precision\n";
  out << memory.r() << ',' << memory.d() << ',' << to_string(memory.precision)
      << '\n';
  for (int i = 0; i < memory.r(); ++i) {
    for (int j = 0; j < memory.d(); ++j) {
      if (j > 0)
        out << ',';
      out << format_double(memory.matrix(i, j));
    }
    out << '\n';
  }
}

void export_memory_csv(const DistributedKeyMemory &memory,
                       const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  export_memory_csv(memory, out);
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

} // namespace gkv
