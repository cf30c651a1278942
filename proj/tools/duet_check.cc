// Copyright 2026 The Duet Enclave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// duet-check: typechecks a Duet program and prints its type.
//
//   duet-check query.duet
//   duet-check query.duet --schema "M [L1, U | star, dR :: dR :: []]"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "duet/checker/checker.h"
#include "duet/common/error.h"
#include "duet/lang/parser.h"
#include "duet/lang/printer.h"

namespace {

int Reject(const absl::Status& status) {
  // Messages of located errors already start with line:column.
  std::cerr << duet::WireName(duet::GetErrorKind(status)) << ": "
            << status.message() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typecheck a Duet program"};
  std::string path;
  std::string schema_text;
  app.add_option("file", path, "Program source, or - for stdin")->required();
  app.add_option("--schema", schema_text,
                 "Validate as a query over this database type");
  CLI11_PARSE(app, argc, argv);

  std::stringstream source;
  if (path == "-") {
    source << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot read " << path << "\n";
      return 2;
    }
    source << in.rdbuf();
  }

  absl::StatusOr<duet::ExprPtr> program = duet::Parse(source.str());
  if (!program.ok()) return Reject(program.status());

  if (schema_text.empty()) {
    absl::StatusOr<duet::Typing> typing = duet::Typecheck(**program);
    if (!typing.ok()) return Reject(typing.status());
    std::cout << duet::RenderType(typing->type) << "\n";
    return 0;
  }

  absl::StatusOr<duet::Ty> schema = duet::ParseType(schema_text);
  if (!schema.ok()) return Reject(schema.status());
  absl::StatusOr<duet::QueryCert> cert = duet::ValidateQuery(**program, *schema);
  if (!cert.ok()) return Reject(cert.status());
  std::cout << duet::RenderType(cert->FunctionType()) << "\n"
            << "cost: " << cert->cost << "\n";
  return 0;
}
