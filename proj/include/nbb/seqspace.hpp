#pragma once

// Sequence alphabet, the Hamming graph over fixed-length sequences, and
// ingestion of FASTA / FASTQ / plain read files.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbb/error.hpp"

namespace nbb {

using Rng = std::mt19937_64;

// Canonical symbol order. Every deterministic enumeration uses it.
inline constexpr std::string_view kCanonicalSymbols = "ACGTN";

// 0..3 for A,C,G,T; 4 for N; -1 otherwise. Lowercase is accepted.
constexpr int base_code(char c) noexcept {
  switch (c) {
    case 'A': case 'a': return 0;
    case 'C': case 'c': return 1;
    case 'G': case 'g': return 2;
    case 'T': case 't': return 3;
    case 'N': case 'n': return 4;
    default: return -1;
  }
}

class Alphabet {
 public:
  // {A,C,G,T} or {A,C,G,T,N}.
  static Alphabet dna(bool include_n);
  // Any non-empty subset of ACGTN, reordered canonically. Used for small
  // exhaustively enumerable graphs.
  static Alphabet custom(std::string_view symbols);

  std::string_view symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool includes_n() const noexcept { return symbols_.find('N') != std::string::npos; }
  bool contains(char c) const noexcept;
  // Position of c within symbols(), or -1.
  int index_of(char c) const noexcept;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  explicit Alphabet(std::string symbols) : symbols_(std::move(symbols)) {}
  std::string symbols_;
};

class IllegalCharacterError : public Error {
 public:
  IllegalCharacterError(std::string record, std::size_t offset, char c);
  const std::string& record() const noexcept { return record_; }
  // 1-based position within the record's sequence.
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string record_;
  std::size_t offset_;
};

// Uppercase string over an alphabet, validated once at construction.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::string_view bases, const Alphabet& alphabet = Alphabet::dna(true));

  // Skips validation; bases must already be uppercase and legal.
  static Sequence trusted(std::string bases) {
    Sequence s;
    s.bases_ = std::move(bases);
    return s;
  }

  const std::string& str() const noexcept { return bases_; }
  std::size_t size() const noexcept { return bases_.size(); }
  bool empty() const noexcept { return bases_.empty(); }
  char operator[](std::size_t i) const noexcept { return bases_[i]; }
  bool has_n() const noexcept { return bases_.find('N') != std::string::npos; }

  friend auto operator<=>(const Sequence&, const Sequence&) = default;

 private:
  std::string bases_;
};

struct SequenceHash {
  std::size_t operator()(const Sequence& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};

struct SequenceRecord {
  std::string id;
  Sequence sequence;
};

std::size_t hamming_distance(const Sequence& a, const Sequence& b);

// |x| * (|alphabet| - 1).
std::size_t neighbor_count(std::size_t length, const Alphabet& alphabet) noexcept;

// The index-th neighbor in position-major, then alphabet order. x must be
// over the alphabet.
Sequence neighbor_at(const Sequence& x, const Alphabet& alphabet, std::size_t index);

// Calls fn(index, neighbor_bases) for every neighbor in enumeration order. The
// string passed to fn is a scratch buffer that is restored after each call.
void for_each_neighbor(const Sequence& x, const Alphabet& alphabet,
                       const std::function<void(std::size_t, const std::string&)>& fn);

struct NeighborSet {
  Sequence origin;
  std::vector<Sequence> members;
};

NeighborSet neighbors(const Sequence& x, const Alphabet& alphabet);

// Positions (0-based) at which a and b differ, ascending.
std::vector<std::size_t> differing_sites(const Sequence& a, const Sequence& b);

enum class PathOrder { kLeftToRight, kRightToLeft };

// (a, ..., b), replacing one differing site per step in the given order.
std::vector<Sequence> hamming_path(const Sequence& a, const Sequence& b,
                                   PathOrder order = PathOrder::kLeftToRight);
std::vector<Sequence> hamming_path(const Sequence& a, const Sequence& b,
                                   std::span<const std::size_t> site_order);

Sequence random_sequence(std::size_t length, const Alphabet& alphabet, Rng& rng);
// count sequences drawn in order from a single generator seeded with seed.
std::vector<Sequence> random_sequences(std::size_t count, std::size_t length, const Alphabet& alphabet,
                                       std::uint64_t seed);

// Lines starting with # or ; are comments.
std::vector<SequenceRecord> parse_fasta(std::istream& in, const std::string& source = "<stream>");
std::vector<SequenceRecord> parse_fasta_file(const std::string& path);

// One sequence per line; '#' comment lines and blank lines are skipped. Ids
// are the 0-based read index.
std::vector<SequenceRecord> parse_plain_reads(std::istream& in, const std::string& source = "<stream>");

// Dispatches on the first non-blank, non-# line: '>' FASTA, '@' FASTQ
// (qualities discarded), otherwise plain lines.
std::vector<SequenceRecord> read_sequences_file(const std::string& path);

}  // namespace nbb
