# Copyright 2026 The Duet Enclave Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Typechecked differentially private queries over enclave-held data."""

from duet_enclave._core import (
    DuetError,
    Enclave,
    gauss_sigma,
    laplace_scale,
    parse,
    parse_type,
    sample_gauss,
    sample_laplace,
    typecheck,
    validate_query,
)

__all__ = [
    "DuetError",
    "Enclave",
    "gauss_sigma",
    "laplace_scale",
    "parse",
    "parse_type",
    "sample_gauss",
    "sample_laplace",
    "typecheck",
    "validate_query",
]
