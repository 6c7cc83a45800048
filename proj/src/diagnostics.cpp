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

#include "gaugenoise/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace gaugenoise {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void to_stderr(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

DiagnosticSink& sink() {
  static DiagnosticSink s = to_stderr;
  return s;
}

}  // namespace

void set_diagnostic_sink(DiagnosticSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = s ? std::move(s) : DiagnosticSink(to_stderr);
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex());
  sink()(message);
}

}  // namespace gaugenoise
