// Copyright 2026 The qse-decode Authors
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

// Small line-oriented parsing helpers shared by the file readers.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qsed {

std::string_view trim(std::string_view s);
std::string_view strip_comment(std::string_view line);
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string> split_list(std::string_view s, char sep = ',');

/// Strict full-string conversions; throw ParseError.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

/// "%.12g"; "nan" and "inf" for non-finite values.
std::string format_number(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace qsed
