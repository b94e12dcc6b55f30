#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nbb/seqspace.hpp"

using namespace nbb;

namespace {

Sequence seq(const char* s) { return Sequence(s); }

std::vector<SequenceRecord> fasta(const std::string& text) {
  std::istringstream in(text);
  return parse_fasta(in);
}

}  // namespace

TEST_CASE("alphabet order and membership") {
  CHECK(Alphabet::dna(true).symbols() == "ACGTN");
  CHECK(Alphabet::dna(false).symbols() == "ACGT");
  CHECK(Alphabet::custom("GA").symbols() == "AG");
  CHECK(Alphabet::custom("NCA").symbols() == "ACN");
  CHECK_THROWS_AS(Alphabet::custom(""), Error);
  CHECK_THROWS_AS(Alphabet::custom("AX"), Error);
  CHECK(Alphabet::dna(false).index_of('T') == 3);
  CHECK(Alphabet::dna(false).index_of('N') == -1);
}

TEST_CASE("sequence validation") {
  CHECK(Sequence("acgtn").str() == "ACGTN");
  CHECK_THROWS_AS(Sequence("ACXT"), IllegalCharacterError);
  CHECK_THROWS_AS(Sequence("ACN", Alphabet::dna(false)), IllegalCharacterError);
  try {
    Sequence bad("ACXT");
    FAIL("expected throw");
  } catch (const IllegalCharacterError& e) {
    CHECK(e.offset() == 3);
    CHECK(e.code() == ErrorCode::kIllegalCharacter);
  }
}

TEST_CASE("fasta parsing") {
  auto one = fasta(">g1\nACGT\n");
  REQUIRE(one.size() == 1);
  CHECK(one[0].id == "g1");
  CHECK(one[0].sequence.str() == "ACGT");

  auto two = fasta(">a\nAC\n>b\nGGT\n");
  REQUIRE(two.size() == 2);
  CHECK(two[0].sequence.size() == 2);
  CHECK(two[1].sequence.size() == 3);

  auto wrapped = fasta("# comment\n>w desc here\nac\ngt\n\n;note\nNN\n");
  REQUIRE(wrapped.size() == 1);
  CHECK(wrapped[0].id == "w desc here");
  CHECK(wrapped[0].sequence.str() == "ACGTNN");

  try {
    fasta(">x\nACXT\n");
    FAIL("expected throw");
  } catch (const IllegalCharacterError& e) {
    CHECK(e.record() == "x");
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(fasta("ACGT\n"), Error);
}

TEST_CASE("file format dispatch") {
  const auto dir = std::filesystem::temp_directory_path() / "nbb_seqspace_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.fa") << "\n# x\n>r1\nACGT\n>r2\nTTTT\n";
    std::ofstream(dir / "a.fq") << "@q1\nACGT\n+\nIIII\n@q2\nGGNA\n+\nIIII\n";
    std::ofstream(dir / "a.txt") << "ACGT\n\n# skip\nCCCC\n";
  }
  auto fa = read_sequences_file((dir / "a.fa").string());
  auto fq = read_sequences_file((dir / "a.fq").string());
  auto tx = read_sequences_file((dir / "a.txt").string());
  REQUIRE(fa.size() == 2);
  REQUIRE(fq.size() == 2);
  REQUIRE(tx.size() == 2);
  CHECK(fa[1].sequence.str() == "TTTT");
  CHECK(fq[1].id == "q2");
  CHECK(fq[1].sequence.str() == "GGNA");
  CHECK(tx[0].id == "0");
  CHECK(tx[1].sequence.str() == "CCCC");
  CHECK_THROWS_AS(read_sequences_file((dir / "missing.fa").string()), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("hamming distance examples") {
  CHECK(hamming_distance(seq("AAA"), seq("AAA")) == 0);
  CHECK(hamming_distance(seq("AAA"), seq("AAT")) == 1);
  CHECK(hamming_distance(seq("ACGT"), seq("TGCA")) == 4);
  CHECK_THROWS_AS(hamming_distance(seq("AA"), seq("AAA")), Error);
}

TEST_CASE("neighbor sets") {
  Rng rng(3);
  const Sequence r = random_sequence(101, Alphabet::dna(false), rng);
  CHECK(neighbors(r, Alphabet::dna(true)).members.size() == 404);
  CHECK(neighbors(r, Alphabet::dna(false)).members.size() == 303);
  auto aaa = neighbors(seq("AAA"), Alphabet::dna(false));
  CHECK(aaa.members.size() == 9);
  CHECK(aaa.members.front().str() == "CAA");
  CHECK(aaa.members.back().str() == "AAT");
  CHECK_THROWS_AS(neighbors(seq("ANA"), Alphabet::dna(false)), Error);
}

TEST_CASE("neighbor count property over lengths 1..200") {
  Rng rng(11);
  for (std::size_t len = 1; len <= 200; ++len) {
    for (bool with_n : {false, true}) {
      const Alphabet a = Alphabet::dna(with_n);
      const Sequence x = random_sequence(len, a, rng);
      const std::size_t expected = len * (a.size() - 1);
      CHECK(neighbor_count(len, a) == expected);
      std::size_t seen = 0;
      for_each_neighbor(x, a, [&](std::size_t i, const std::string& nb) {
        CHECK(i == seen);
        CHECK(hamming_distance(x, Sequence::trusted(nb)) == 1);
        ++seen;
      });
      CHECK(seen == expected);
    }
  }
}

TEST_CASE("neighbor_at agrees with enumeration and neighbors are distinct") {
  Rng rng(5);
  const Alphabet a = Alphabet::dna(true);
  const Sequence x = random_sequence(12, a, rng);
  auto set = neighbors(x, a);
  std::set<Sequence> uniq(set.members.begin(), set.members.end());
  CHECK(uniq.size() == set.members.size());
  CHECK(uniq.count(x) == 0);
  for (std::size_t i = 0; i < set.members.size(); ++i) CHECK(neighbor_at(x, a, i) == set.members[i]);
  CHECK_THROWS_AS(neighbor_at(x, a, set.members.size()), Error);
}

TEST_CASE("neighbor symmetry property") {
  Rng rng(17);
  const Alphabet a = Alphabet::dna(true);
  for (int t = 0; t < 50; ++t) {
    const Sequence x = random_sequence(8, a, rng);
    for (const auto& y : neighbors(x, a).members) {
      const auto back = neighbors(y, a).members;
      CHECK(std::find(back.begin(), back.end(), x) != back.end());
    }
  }
}

TEST_CASE("hamming distance is a metric") {
  Rng rng(23);
  const Alphabet a = Alphabet::dna(true);
  for (int t = 0; t < 500; ++t) {
    const Sequence x = random_sequence(15, a, rng);
    const Sequence y = random_sequence(15, a, rng);
    const Sequence z = random_sequence(15, a, rng);
    CHECK(hamming_distance(x, x) == 0);
    CHECK((hamming_distance(x, y) == 0) == (x == y));
    CHECK(hamming_distance(x, y) == hamming_distance(y, x));
    CHECK(hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z));
  }
}

TEST_CASE("hamming path examples") {
  CHECK(hamming_path(seq("ACG"), seq("ACG")) == std::vector<Sequence>{seq("ACG")});
  CHECK(hamming_path(seq("AAA"), seq("ATT")) == std::vector<Sequence>{seq("AAA"), seq("ATA"), seq("ATT")});
  CHECK(hamming_path(seq("AAA"), seq("ATT"), PathOrder::kRightToLeft) ==
        std::vector<Sequence>{seq("AAA"), seq("AAT"), seq("ATT")});
  CHECK(differing_sites(seq("AAA"), seq("ATT")) == std::vector<std::size_t>{1, 2});
  CHECK_THROWS_AS(hamming_path(seq("AA"), seq("AAA")), Error);
  const std::vector<std::size_t> bad_order = {1};
  CHECK_THROWS_AS(hamming_path(seq("AAA"), seq("ATT"), bad_order), Error);
}

TEST_CASE("hamming path properties") {
  Rng rng(29);
  const Alphabet a = Alphabet::dna(true);
  for (int t = 0; t < 200; ++t) {
    const Sequence x = random_sequence(20, a, rng);
    const Sequence y = random_sequence(20, a, rng);
    for (auto order : {PathOrder::kLeftToRight, PathOrder::kRightToLeft}) {
      const auto path = hamming_path(x, y, order);
      CHECK(path.front() == x);
      CHECK(path.back() == y);
      CHECK(path.size() == hamming_distance(x, y) + 1);
      for (std::size_t i = 1; i < path.size(); ++i) CHECK(hamming_distance(path[i - 1], path[i]) == 1);
    }
  }
}

TEST_CASE("random sequences") {
  Rng r1(42), r2(42);
  const Sequence a = random_sequence(101, Alphabet::dna(false), r1);
  CHECK(a.size() == 101);
  CHECK_FALSE(a.has_n());
  CHECK(a == random_sequence(101, Alphabet::dna(false), r2));
  Rng r3(1);
  CHECK(random_sequence(1, Alphabet::custom("A"), r3).str() == "A");
  const auto batch = random_sequences(5, 30, Alphabet::dna(false), 9);
  CHECK(batch == random_sequences(5, 30, Alphabet::dna(false), 9));
  CHECK(batch[0] != batch[1]);
}
