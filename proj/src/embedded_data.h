// Copyright 2026 The tripletkit Authors.
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

#ifndef TRIPLETKIT_EMBEDDED_DATA_H_
#define TRIPLETKIT_EMBEDDED_DATA_H_

#include <string_view>

namespace tripletkit {

// Contents of a file under data/, compiled into the library. Throws
// std::out_of_range for unknown names.
std::string_view EmbeddedData(std::string_view name);

}  // namespace tripletkit

#endif  // TRIPLETKIT_EMBEDDED_DATA_H_
