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

#ifndef DUET_LANG_PRINTER_H_
#define DUET_LANG_PRINTER_H_

#include <string>

#include "duet/lang/ast.h"

namespace duet {

// Renders an expression in concrete syntax. Parse(Render(e)) == e.
std::string Render(const Expr& e);

// Renders a type, e.g. "M [L1,U | star, dR::dR::[]]@<1.0, 0.001> => R".
std::string RenderType(const Ty& t);

}  // namespace duet

#endif  // DUET_LANG_PRINTER_H_
