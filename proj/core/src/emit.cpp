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

#include "qdescent/emit.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace qdescent {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double bound_or_nan(const std::vector<double>& v, std::size_t k) {
  return k < v.size() ? v[k] : std::numeric_limits<double>::quiet_NaN();
}

void emit_csv(const Trajectory& traj, std::ostream& os) {
  const std::size_t n = traj.z.empty() ? 0 : traj.z.front().size();
  const std::size_t m = traj.lambda.empty() ? 0 : traj.lambda.front().size();
  os << "k";
  for (std::size_t i = 0; i < n; ++i) os << ",z_" << i;
  for (std::size_t i = 0; i < n; ++i) os << ",x_" << i;
  for (std::size_t i = 0; i < m; ++i) os << ",lambda_" << i;
  for (std::size_t i = 0; i < m; ++i) os << ",mu_" << i;
  for (std::size_t i = 0; i < m; ++i) os << ",q_scaled_" << i;
  os << ",f_avg,g_violation_max,bound_lower,bound_upper\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << (k + 1);
    for (double v : traj.z[k]) os << ',' << fmt(v);
    for (double v : traj.x[k]) os << ',' << fmt(v);
    for (double v : traj.lambda[k]) os << ',' << fmt(v);
    for (double v : traj.mu[k]) os << ',' << fmt(v);
    for (double v : traj.q_scaled[k]) os << ',' << fmt(v);
    os << ',' << fmt(traj.f_avg[k]) << ',' << fmt(traj.g_violation_max[k])
       << ',' << fmt(bound_or_nan(traj.bound_lower, k)) << ','
       << fmt(bound_or_nan(traj.bound_upper, k)) << '\n';
  }
}

void emit_vec(std::ostream& os, const char* key, const Vec& v) {
  os << ",\"" << key << "\":[";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << fmt(v[i]);
  os << ']';
}

void emit_jsonl(const Trajectory& traj, std::ostream& os) {
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << "{\"k\":" << (k + 1);
    emit_vec(os, "z", traj.z[k]);
    emit_vec(os, "x", traj.x[k]);
    emit_vec(os, "lambda", traj.lambda[k]);
    emit_vec(os, "mu", traj.mu[k]);
    emit_vec(os, "q_scaled", traj.q_scaled[k]);
    os << ",\"f_avg\":" << fmt(traj.f_avg[k])
       << ",\"g_violation_max\":" << fmt(traj.g_violation_max[k]);
    if (k < traj.bound_lower.size())
      os << ",\"bound_lower\":" << fmt(traj.bound_lower[k])
         << ",\"bound_upper\":" << fmt(traj.bound_upper[k]);
    os << "}\n";
  }
}

}  // namespace

EmitFormat parse_emit_format(const std::string& name) {
  if (name == "csv") return EmitFormat::kCsv;
  if (name == "jsonlines") return EmitFormat::kJsonLines;
  throw std::invalid_argument("unknown format: " + name);
}

void emit(const Trajectory& traj, EmitFormat format, std::ostream& os) {
  if (format == EmitFormat::kCsv)
    emit_csv(traj, os);
  else
    emit_jsonl(traj, os);
}

void emit_file(const Trajectory& traj, EmitFormat format,
               const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  emit(traj, format, os);
  if (!os.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace qdescent
