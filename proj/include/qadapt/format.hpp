// Copyright 2026 The qadapt Authors
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

#ifndef QADAPT_FORMAT_HPP
#define QADAPT_FORMAT_HPP

#include <string>
#include <string_view>

namespace qadapt {

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

/// Parses the whole of `text` as a double; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);

}  // namespace qadapt

#endif  // QADAPT_FORMAT_HPP
