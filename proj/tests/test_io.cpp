#include <gtest/gtest.h>

#include <filesystem>

#include "conlog/error.hpp"
#include "conlog/io.hpp"
#include "conlog/random.hpp"

using namespace conlog;

namespace {

const std::string kContexts = std::string(CONLOG_DATA_DIR) + "/contexts/";

std::string path(const char* name) { return kContexts + name; }

}  // namespace

TEST(Cxt, ParsesK0) {
  const CxtDocument d = parse_cxt_document(read_file(path("K0.cxt")));
  EXPECT_EQ(d.context, FormalContext::from_rows({"g1", "g2"}, {"m1", "m2"}, {"X.", "XX"}));
  EXPECT_FALSE(d.crlf);
  const FormalContext planets = load_context(path("planets.cxt"));
  EXPECT_EQ(planets.object_count(), 9u);
  EXPECT_EQ(planets.attribute_count(), 7u);
  EXPECT_EQ(parse_cxt_document(read_file(path("planets.cxt"))).name, "planets");
}

// Every corpus file serializes back to its exact bytes.
TEST(Corpus, ByteExactRoundTrip) {
  std::size_t seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(kContexts)) {
    const std::string text = read_file(e.path().string());
    if (e.path().extension() == ".cxt") {
      EXPECT_EQ(serialize_cxt(parse_cxt_document(text)), text) << e.path();
    } else {
      EXPECT_EQ(serialize_csv(parse_csv_document(text)), text) << e.path();
    }
    EXPECT_NO_THROW(load_context(e.path().string()));
    ++seen;
  }
  EXPECT_GE(seen, 10u);
}

TEST(Cxt, RandomRoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto k = random_context(rng, 1, 8, 1, 8);
    EXPECT_EQ(parse_cxt(serialize_cxt(k)), k);
    CsvDocument d{k, "", rng.chance(1, 2) ? CsvCells::binary : CsvCells::cross_dot, rng.chance(1, 2)};
    EXPECT_EQ(parse_csv(serialize_csv(d)), k);
  }
}

TEST(Cxt, Errors) {
  try {
    parse_cxt("B\n\n2\n2\n\ng1\ng2\nm1\nm2\nX.\nXY\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 11u);
  }
  EXPECT_THROW(parse_cxt("A\n\n1\n1\n\ng\nm\nX\n"), ParseError);
  EXPECT_THROW(parse_cxt("B\n\nx\n1\n\ng\nm\nX\n"), ParseError);
  EXPECT_THROW(parse_cxt("B\n\n2\n1\n\ng\nm\nX\n"), ParseError);
  EXPECT_THROW(parse_cxt("B\n\n1\n1\n\ng\nm\nXX\n"), ParseError);
  EXPECT_THROW(parse_cxt("B\n\n0\n1\n\nm\n"), Error);
  EXPECT_THROW(load_context(path("missing.cxt")), Error);
}

TEST(Csv, QuotingAndCells) {
  const CsvDocument animals = parse_csv_document(read_file(path("animals.csv")));
  EXPECT_EQ(animals.cells, CsvCells::binary);
  EXPECT_EQ(animals.corner, "animal");
  EXPECT_EQ(animals.context.attributes()[2], "has, fur");
  EXPECT_EQ(animals.context.objects()[4], "\"eagle\"");
  EXPECT_TRUE(animals.context.incident(2, 2));
  const CsvDocument quoted = parse_csv_document(read_file(path("quoted.csv")));
  EXPECT_EQ(quoted.context.objects()[3], " g4 ");
  const CsvDocument crlf = parse_csv_document(read_file(path("K0_crlf.csv")));
  EXPECT_TRUE(crlf.crlf);
  EXPECT_EQ(crlf.context, load_context(path("K0.cxt")));
}

TEST(Csv, Errors) {
  EXPECT_THROW(parse_csv("o,a,b\ng,X,1\n"), ParseError);  // mixed cell styles
  EXPECT_THROW(parse_csv("o,a\ng,X,.\n"), ParseError);
  EXPECT_THROW(parse_csv("o,a\ng,Y\n"), ParseError);
  EXPECT_THROW(parse_csv("o,\"a\ng,X\n"), ParseError);
  EXPECT_THROW(parse_csv("o,a\n"), Error);
  try {
    parse_csv("o,a\ng,X\nh,X,X\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Assignment, Parsing) {
  RawAssignment a = parse_assignment("p={g1,g2}");
  EXPECT_EQ(a.name, "p");
  EXPECT_FALSE(a.sort);
  EXPECT_EQ(a.members, (std::vector<std::string>{"g1", "g2"}));
  a = parse_assignment("q:2={}");
  EXPECT_EQ(a.name, "q");
  EXPECT_EQ(a.sort, "2");
  EXPECT_TRUE(a.members.empty());
  a = parse_assignment(" r:s1 = { g1 , g3 } ");
  EXPECT_EQ(a.sort, "s1");
  EXPECT_EQ(a.members, (std::vector<std::string>{"g1", "g3"}));
  for (const char* bad : {"p", "p={g1", "={g1}", "p=g1", "p={g1,,g2}"}) {
    EXPECT_THROW(parse_assignment(bad), ParseError) << bad;
  }
}

TEST(Writer, Layout) {
  StructuredWriter w;
  w.field("kind", "FC").list("concepts", {"a", "b"}).list("none", {});
  EXPECT_EQ(w.str(), "kind: FC\nconcepts:\n  - a\n  - b\nnone: []\n");
  EXPECT_THROW(StructuredWriter().field("k", "a\nb"), Error);
}
