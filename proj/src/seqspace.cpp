#include "nbb/seqspace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace nbb {

Alphabet Alphabet::dna(bool include_n) {
  return Alphabet(include_n ? "ACGTN" : "ACGT");
}

Alphabet Alphabet::custom(std::string_view symbols) {
  require(!symbols.empty(), ErrorCode::kInvalidArgument, "alphabet must be non-empty");
  std::string canonical;
  for (char c : kCanonicalSymbols) {
    const auto n = std::count_if(symbols.begin(), symbols.end(),
                                 [c](char s) { return std::toupper(static_cast<unsigned char>(s)) == c; });
    require(n <= 1, ErrorCode::kInvalidArgument,
            std::string("duplicate alphabet symbol '") + c + "'");
    if (n == 1) canonical.push_back(c);
  }
  require(canonical.size() == symbols.size(), ErrorCode::kInvalidArgument,
          "alphabet symbols must be drawn from ACGTN");
  return Alphabet(std::move(canonical));
}

bool Alphabet::contains(char c) const noexcept { return index_of(c) >= 0; }

int Alphabet::index_of(char c) const noexcept {
  const auto pos = symbols_.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

IllegalCharacterError::IllegalCharacterError(std::string record, std::size_t offset, char c)
    : Error(ErrorCode::kIllegalCharacter,
            "illegal character '" + std::string(1, c) + "' in record '" + record +
                "' at offset " + std::to_string(offset)),
      record_(std::move(record)),
      offset_(offset) {}

namespace {

Sequence validated(std::string_view bases, const Alphabet& alphabet, const std::string& record) {
  std::string out(bases.size(), '\0');
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(bases[i])));
    if (!alphabet.contains(up)) throw IllegalCharacterError(record, i + 1, bases[i]);
    out[i] = up;
  }
  return Sequence::trusted(std::move(out));
}

}  // namespace

Sequence::Sequence(std::string_view bases, const Alphabet& alphabet)
    : bases_(validated(bases, alphabet, "<sequence>").str()) {}

std::size_t hamming_distance(const Sequence& a, const Sequence& b) {
  require(a.size() == b.size(), ErrorCode::kLengthMismatch,
          "hamming distance needs equal lengths (" + std::to_string(a.size()) + " vs " +
              std::to_string(b.size()) + ")");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::size_t neighbor_count(std::size_t length, const Alphabet& alphabet) noexcept {
  return length * (alphabet.size() - 1);
}

namespace {

void require_over(const Sequence& x, const Alphabet& alphabet) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!alphabet.contains(x[i])) {
      fail(ErrorCode::kInvalidArgument,
           "sequence has '" + std::string(1, x[i]) + "' at offset " + std::to_string(i + 1) +
               ", outside the neighbor alphabet " + std::string(alphabet.symbols()));
    }
  }
}

}  // namespace

Sequence neighbor_at(const Sequence& x, const Alphabet& alphabet, std::size_t index) {
  const std::size_t per_site = alphabet.size() - 1;
  require(index < neighbor_count(x.size(), alphabet), ErrorCode::kInvalidArgument,
          "neighbor index out of range");
  const std::size_t pos = index / per_site;
  std::size_t slot = index % per_site;
  const int own = alphabet.index_of(x[pos]);
  require(own >= 0, ErrorCode::kInvalidArgument, "sequence symbol outside neighbor alphabet");
  if (slot >= static_cast<std::size_t>(own)) ++slot;
  std::string bases = x.str();
  bases[pos] = alphabet.symbols()[slot];
  return Sequence::trusted(std::move(bases));
}

void for_each_neighbor(const Sequence& x, const Alphabet& alphabet,
                       const std::function<void(std::size_t, const std::string&)>& fn) {
  require_over(x, alphabet);
  std::string scratch = x.str();
  std::size_t index = 0;
  for (std::size_t pos = 0; pos < scratch.size(); ++pos) {
    const char own = scratch[pos];
    for (char s : alphabet.symbols()) {
      if (s == own) continue;
      scratch[pos] = s;
      fn(index++, scratch);
    }
    scratch[pos] = own;
  }
}

NeighborSet neighbors(const Sequence& x, const Alphabet& alphabet) {
  NeighborSet set{x, {}};
  set.members.reserve(neighbor_count(x.size(), alphabet));
  for_each_neighbor(x, alphabet, [&](std::size_t, const std::string& s) {
    set.members.push_back(Sequence::trusted(s));
  });
  return set;
}

std::vector<std::size_t> differing_sites(const Sequence& a, const Sequence& b) {
  require(a.size() == b.size(), ErrorCode::kLengthMismatch, "sequences differ in length");
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) sites.push_back(i);
  }
  return sites;
}

std::vector<Sequence> hamming_path(const Sequence& a, const Sequence& b, PathOrder order) {
  auto sites = differing_sites(a, b);
  if (order == PathOrder::kRightToLeft) std::reverse(sites.begin(), sites.end());
  return hamming_path(a, b, sites);
}

std::vector<Sequence> hamming_path(const Sequence& a, const Sequence& b,
                                   std::span<const std::size_t> site_order) {
  const auto sites = differing_sites(a, b);
  std::vector<std::size_t> sorted(site_order.begin(), site_order.end());
  std::sort(sorted.begin(), sorted.end());
  require(sorted == sites, ErrorCode::kInvalidArgument,
          "site order must be a permutation of the differing sites");

  std::vector<Sequence> path;
  path.reserve(sites.size() + 1);
  path.push_back(a);
  std::string cur = a.str();
  for (std::size_t pos : site_order) {
    cur[pos] = b[pos];
    path.push_back(Sequence::trusted(cur));
  }
  return path;
}

Sequence random_sequence(std::size_t length, const Alphabet& alphabet, Rng& rng) {
  require(length >= 1, ErrorCode::kInvalidArgument, "random sequence length must be >= 1");
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string bases(length, '\0');
  for (auto& c : bases) c = alphabet.symbols()[pick(rng)];
  return Sequence::trusted(std::move(bases));
}

std::vector<Sequence> random_sequences(std::size_t count, std::size_t length, const Alphabet& alphabet,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Sequence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_sequence(length, alphabet, rng));
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const Alphabet& read_alphabet() {
  static const Alphabet a = Alphabet::dna(true);
  return a;
}

}  // namespace

std::vector<SequenceRecord> parse_fasta(std::istream& in, const std::string& source) {
  std::vector<SequenceRecord> records;
  std::string id;
  std::string body;
  bool open = false;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (open) records.push_back({id, validated(body, read_alphabet(), id)});
    body.clear();
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    if (t.front() == '>') {
      flush();
      id = std::string(trim(t.substr(1)));
      require(!id.empty(), ErrorCode::kParse,
              source + ":" + std::to_string(line_no) + ": empty FASTA header");
      open = true;
      continue;
    }
    require(open, ErrorCode::kParse,
            source + ":" + std::to_string(line_no) + ": sequence data before first FASTA header");
    body.append(t);
  }
  flush();
  return records;
}

std::vector<SequenceRecord> parse_fasta_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  return parse_fasta(in, path);
}

std::vector<SequenceRecord> parse_plain_reads(std::istream& in, const std::string& source) {
  (void)source;
  std::vector<SequenceRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string id = std::to_string(records.size());
    Sequence s = validated(t, read_alphabet(), id);
    records.push_back({std::move(id), std::move(s)});
  }
  return records;
}

namespace {

std::vector<SequenceRecord> parse_fastq(std::istream& in, const std::string& source) {
  std::vector<SequenceRecord> records;
  std::string header, bases, plus, quals;
  std::size_t line_no = 0;
  while (std::getline(in, header)) {
    ++line_no;
    if (trim(header).empty()) continue;
    require(trim(header).front() == '@', ErrorCode::kParse,
            source + ":" + std::to_string(line_no) + ": expected FASTQ '@' header");
    require(static_cast<bool>(std::getline(in, bases)) && static_cast<bool>(std::getline(in, plus)) &&
                static_cast<bool>(std::getline(in, quals)),
            ErrorCode::kParse, source + ": truncated FASTQ record");
    line_no += 3;
    std::string id(trim(std::string_view(header).substr(header.find('@') + 1)));
    require(!id.empty(), ErrorCode::kParse, source + ": empty FASTQ header");
    records.push_back({id, validated(trim(bases), read_alphabet(), id)});
  }
  return records;
}

}  // namespace

std::vector<SequenceRecord> read_sequences_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  char first = '\0';
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    first = t.front();
    break;
  }
  in.clear();
  in.seekg(0);
  if (first == '>') return parse_fasta(in, path);
  if (first == '@') return parse_fastq(in, path);
  return parse_plain_reads(in, path);
}

}  // namespace nbb
