// Copyright 2026 The ultrawrap Authors
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

// JSON encodings used by the command line tool.
//
//   scalar      string: "3", "-1", "p5:2.31e-1"
//   element     {"params": {"field", "kind", "p", "precision", "q"}, "coeffs": [...]}
//   magma       {"names": [...], "table": [[...]]} or a bare table
//   grid map    {"grid": {"p", "depth"}, "marked": ["00"], "values": [...] or "0012",
//                "targets": n, "rho": 1}

#ifndef ULTRAWRAP_TOOLS_JSON_IO_HPP_
#define ULTRAWRAP_TOOLS_JSON_IO_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "ultrawrap/cayley_dickson.hpp"
#include "ultrawrap/group_constructions.hpp"
#include "ultrawrap/padic.hpp"
#include "ultrawrap/wrap_sim.hpp"

namespace ultrawrap::io {

using json = nlohmann::ordered_json;

// Inline JSON when the text starts with '{' or '[', otherwise a file path.
json load(const std::string& text_or_path);

json to_json(const FieldSpec& f);
std::string scalar_text(const UltraScalar& x);
json to_json(const CDParams& p);
json to_json(const CDElement& x);

// Scalar from a JSON number or an expression string.
UltraScalar scalar_from(const json& j, const FieldSpec& f);
// Comma separated scalar expressions.
std::vector<UltraScalar> scalar_list(const std::string& csv, const FieldSpec& f);

// Z<n>, S<n>, Q8, octonion-units, trivial.
MagmaPtr builtin_magma(const std::string& name);
MagmaPtr magma_from(const json& j);
// Builtin name or JSON (inline or file).
MagmaPtr magma_arg(const std::string& arg);
json to_json(const FiniteMagma& m, const MagmaAudit& a);

// Missing fields default to the standard grid for (p, depth, k) and the
// given targets and rho.
wrap::GridMap grid_map_from(const json& j, int p, int depth, int k, int targets, int rho);
json to_json(const wrap::GridMap& f);

}  // namespace ultrawrap::io

#endif  // ULTRAWRAP_TOOLS_JSON_IO_HPP_
