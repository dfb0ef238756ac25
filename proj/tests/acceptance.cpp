// Copyright 2026 The ncerg Authors
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

// Acceptance suite runner: one line per criterion, nonzero exit on failure.

#include <cstdio>
#include <cstring>

#include "ncerg/selftest.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 12345;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);

  const auto results = ncerg::run_acceptance(seed);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%2d/13] %s  %-28s %s\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.details.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%d/13 criteria passed\n", 13 - failures);
  return failures;
}
