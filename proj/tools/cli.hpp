// Copyright 2026 The alg2d Authors
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

// JSON front end for the alg2d command line tool.
//
// Input is {"msc": [[a1,a2,a3,a4],[b1,b2,b3,b4]], "tolerance": t} (tolerance
// optional) or an array of such objects.

#ifndef ALG2D_TOOLS_CLI_HPP_
#define ALG2D_TOOLS_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alg2d/alg2d.hpp"
#include "json.hpp"

namespace alg2d::cli {

using Json = nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kTrivialAlgebra = 2,
  kUndefinedTable = 3,
  kOrbitTestFailed = 4,
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  Msc msc;
  std::optional<double> tolerance;
};

// Parses one object or an array of objects. Throws ParseError naming the
// offending field.
std::vector<Input> parse_inputs(const Json& j);
Input parse_input(const Json& j, const std::string& where = "");

// A file path, "-" for stdin, or inline JSON (anything starting with '{' or
// '[').
Json load_json(const std::string& source);

struct Margins {
  double det_p = 0.0;
  std::vector<double> trace_norms;
};

struct Report {
  Msc input;
  int subset = 0;
  CanonicalForm canonical;
  PropertyFlags flags;
  DivisionData division;
  std::optional<EvolutionClass> evolution;
  int derivation_dim = 0;
  Margins margins;
  std::optional<CommutativeLabel> commutative_label;
  std::optional<std::string> jordan_label;
};

Report make_report(const Msc& a, const Tolerances& tol = {});

Json to_json(const Report& r);
Report report_from_json(const Json& j);
bool operator==(const Report& a, const Report& b);

Json to_json(const Msc& m);
Json to_json(const Mat2& m);
Json to_json(const CanonicalForm& c);
Json to_json(const EvolutionClass& c);
Json to_json(const LinearFamily& f);

// Floats with 17 significant digits; `indent` < 0 gives a single line.
std::string dump(const Json& j, int indent = -1);

// Entry point for the command line tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace alg2d::cli

#endif  // ALG2D_TOOLS_CLI_HPP_
