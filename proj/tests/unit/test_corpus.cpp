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


#include <filesystem>
#include <string>

#include <doctest.h>

#include "fractext/corpus.hpp"
#include "fractext/error.hpp"
#include "fractext/io.hpp"

namespace co = fractext::corpus;

TEST_SUITE("corpus") {
  TEST_CASE("manifest with the three categories") {
    const auto m = co::parse_manifest(
        "# min_tokens: 1000\n"
        "id\ttitle\tauthor\tcategory\tpath\n"
        "a\tA\tX\tC\ta.txt\n"
        "b\tB\tY\tN\tb.txt\n"
        "c\tC\tZ\tX\t/abs/c.txt\n",
        "/base");
    REQUIRE(m.entries.size() == 3);
    CHECK(m.min_tokens == 1000);
    CHECK(m.entries[0].category == co::Category::kCanonical);
    CHECK(m.entries[1].category == co::Category::kNonCanonical);
    CHECK(m.entries[2].category == co::Category::kNonLiterary);
    CHECK(m.resolve(m.entries[0]) == std::filesystem::path("/base/a.txt"));
    CHECK(m.resolve(m.entries[2]) == std::filesystem::path("/abs/c.txt"));
    const auto again = co::parse_manifest(co::format_manifest(m), "/base");
    CHECK(again.entries.size() == 3);
    CHECK(again.entries[1].title == "B");
    CHECK(again.min_tokens == 1000);
  }

  TEST_CASE("manifest errors") {
    CHECK_THROWS_AS(co::parse_manifest("a\tA\tX\tC\ta.txt\na\tB\tY\tN\tb.txt\n"),
                    fractext::DataError);
    CHECK_THROWS_AS(co::parse_manifest(""), fractext::DataError);
    CHECK_THROWS_AS(co::parse_manifest("# only a comment\n"), fractext::DataError);
    CHECK_THROWS_AS(co::parse_manifest("a\tA\tX\tpoetry\ta.txt\n"), fractext::DataError);
    CHECK_THROWS_AS(co::parse_manifest("a\tA\tX\tC\n"), fractext::DataError);
  }

  TEST_CASE("category names") {
    CHECK(co::parse_category("Non-Literary") == co::Category::kNonLiterary);
    CHECK(co::parse_category("canonical") == co::Category::kCanonical);
    CHECK(co::parse_category(co::category_name(co::Category::kNonCanonical)) ==
          co::Category::kNonCanonical);
    CHECK(co::is_literary(co::Category::kNonCanonical));
    CHECK_FALSE(co::is_literary(co::Category::kNonLiterary));
  }

  TEST_CASE("hyphenated line breaks are re-joined") {
    CHECK(co::clean_text("frac-\ntion of the whole") == "fraction of the whole");
    CHECK(co::clean_text("well-\nknown") == "wellknown");
  }

  TEST_CASE("plain text is unchanged") {
    CHECK(co::clean_text("A plain sentence. Another one.") == "A plain sentence. Another one.");
  }

  TEST_CASE("excluded regions are removed") {
    CHECK(co::clean_text("A B <EXCLUDE>index entries</EXCLUDE> C") == "A B  C");
    CHECK(co::clean_text("head\n%%EXCLUDE-BEGIN%%\nlicense\n%%EXCLUDE-END%%\nbody") ==
          "head\n\nbody");
    CHECK_THROWS_AS(co::clean_text("x <EXCLUDE> y"), fractext::DataError);
    CHECK_THROWS_AS(co::clean_text("%%EXCLUDE-BEGIN%%\nnever closed\n"), fractext::DataError);
  }

  TEST_CASE("line breaks and paragraphs") {
    CHECK(co::clean_text("one\ntwo\r\n\r\n\r\nthree") == "one two\n\nthree");
    const std::string messy = "a-\nb c\n\n\nd\r\ne <EXCLUDE>z</EXCLUDE>";
    CHECK(co::clean_text(co::clean_text(messy)) == co::clean_text(messy));
  }

  TEST_CASE("UTF-8 validation") {
    CHECK_NOTHROW(co::check_utf8("caf\xC3\xA9", "t"));
    CHECK_THROWS_AS(co::check_utf8("bad \xC3(", "t"), fractext::DataError);
    CHECK_THROWS_AS(co::check_utf8("\xE2\x80", "t"), fractext::DataError);
  }

  TEST_CASE("length threshold") {
    std::string text;
    for (int i = 0; i < 34999; ++i) text += "w ";
    co::RawDocument doc;
    doc.text = text;
    CHECK(co::count_whitespace_tokens(doc.text) == 34999);
    CHECK_FALSE(co::validate_length(doc, 35000));
    doc.text += "w";
    CHECK(co::validate_length(doc, 35000));
    doc.text.clear();
    CHECK_FALSE(co::validate_length(doc, 35000));
  }

  TEST_CASE("documents load relative to the manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "fractext_corpus_test";
    std::filesystem::remove_all(dir);
    fractext::io::write_text(dir / "texts" / "a.txt", "\xEF\xBB\xBFHello world.");
    fractext::io::write_text(dir / "manifest.tsv", "a\tA\tX\tcanonical\ttexts/a.txt\n"
                                                   "b\tB\tY\tcanonical\ttexts/missing.txt\n");
    const auto m = co::load_manifest(dir / "manifest.tsv");
    CHECK(co::load_document(m, m.entries[0]).text == "Hello world.");
    try {
      co::load_document(m, m.entries[1]);
      FAIL("missing file accepted");
    } catch (const fractext::DataError& e) {
      CHECK(std::string(e.what()).find("missing.txt") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
  }
}
