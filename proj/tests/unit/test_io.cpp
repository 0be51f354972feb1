// Copyright 2026 The fractext Authors.
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


#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include <doctest.h>

#include "fractext/error.hpp"
#include "fractext/io.hpp"

namespace io = fractext::io;

TEST_SUITE("io") {
  TEST_CASE("numbers round trip in shortest form") {
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(-0.0) == "0");
    CHECK(io::format_number(3.0) == "3");
    CHECK(io::format_number(std::nan("")) == "nan");
    CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    for (double v : {1.0 / 3.0, 6.02e23, -1e-300, 0.72}) {
      CHECK(io::parse_number(io::format_number(v)) == v);
    }
    CHECK(std::isnan(io::parse_number("nan")));
    CHECK_THROWS_AS(io::parse_number("1.5x"), fractext::DataError);
    CHECK_THROWS_AS(io::parse_number(""), fractext::DataError);
  }

  TEST_CASE("CSV quoting") {
    CHECK(io::csv_escape("plain") == "plain");
    CHECK(io::csv_escape("a,b") == "\"a,b\"");
    CHECK(io::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    io::CsvWriter w({"name", "note"});
    w.row({"x", "a,b"});
    w.row({"y", "line\nbreak"});
    CHECK_THROWS_AS(w.row({"only one"}), std::logic_error);
    const auto rows = io::parse_csv(w.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][1] == "a,b");
    CHECK(rows[2][1] == "line\nbreak");
  }

  TEST_CASE("atomic writes and hashing") {
    const auto dir = std::filesystem::temp_directory_path() / "fractext_io_test";
    std::filesystem::remove_all(dir);
    io::write_text(dir / "a" / "b.txt", "abc");
    CHECK(io::read_text(dir / "a" / "b.txt") == "abc");
    CHECK(io::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(io::file_sha256(dir / "a" / "b.txt") == io::sha256_hex("abc"));
    CHECK_THROWS_AS(io::read_text(dir / "missing"), fractext::DataError);
    std::filesystem::remove_all(dir);
  }
}
