// Copyright 2026 The gaugenoise Authors
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

#pragma once

#include <functional>
#include <string>

namespace gaugenoise {

/// Receives non-fatal numerical warnings (imaginary expectation parts,
/// failed validity checks, ...). Defaults to stderr. Thread-safe.
using DiagnosticSink = std::function<void(const std::string&)>;

/// An empty sink restores the default (stderr).
void set_diagnostic_sink(DiagnosticSink sink);
void warn(const std::string& message);

}  // namespace gaugenoise
