// Copyright 2026 The qdescent Authors
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

#ifndef QDESCENT_EMIT_HPP_
#define QDESCENT_EMIT_HPP_

#include <iosfwd>
#include <string>

#include "qdescent/solver.hpp"

namespace qdescent {

enum class EmitFormat { kCsv, kJsonLines };

EmitFormat parse_emit_format(const std::string& name);  // "csv" | "jsonlines"

// Fixed column order: k, z*, x*, lambda*, mu*, q_scaled*, f_avg,
// g_violation_max, bound_lower, bound_upper. Starred groups expand one
// column per component. Floats carry 12 significant digits; rows without
// bound data emit nan. Output is deterministic byte for byte.
void emit(const Trajectory& traj, EmitFormat format, std::ostream& os);

// File variant; I/O failures raise std::runtime_error naming the path.
void emit_file(const Trajectory& traj, EmitFormat format,
               const std::string& path);

}  // namespace qdescent

#endif  // QDESCENT_EMIT_HPP_
