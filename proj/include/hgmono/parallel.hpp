// Copyright 2026 The hgmono Authors.
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

#ifndef HGMONO_PARALLEL_HPP_
#define HGMONO_PARALLEL_HPP_

namespace hgmono {

// Number of OpenMP workers used by the parallel kernels. Defaults to the
// HGM_THREADS environment variable when set, else the OpenMP default.
int worker_count();

// Overrides the worker count for subsequent kernels; 0 restores the default.
void set_worker_count(int workers);

}  // namespace hgmono

#endif  // HGMONO_PARALLEL_HPP_
