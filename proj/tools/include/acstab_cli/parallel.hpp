// Copyright 2026 The acstab Authors.
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

#ifndef ACSTAB_CLI_PARALLEL_HPP
#define ACSTAB_CLI_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace acstab::cli {

/// Hardware concurrency, capped by ACSTAB_THREADS when that holds a positive
/// integer. Never less than one.
unsigned worker_count();

/// Calls task(i) for i in [0, n) on up to worker_count() threads. Tasks must
/// write only to their own slot; the first exception thrown is rethrown here
/// after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace acstab::cli

#endif  // ACSTAB_CLI_PARALLEL_HPP
