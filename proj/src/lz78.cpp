#include "ppmlab/lz78.hpp"

#include <bit>
#include <stdexcept>

namespace ppmlab {

unsigned pointer_width(std::uint64_t j) {
  if (j == 0) throw std::domain_error("phrase numbers start at 1");
  return j == 1 ? 0u : static_cast<unsigned>(std::bit_width(j - 1));
}

std::uint64_t pointer_bits(PointerCode code, std::uint64_t j, std::uint64_t target) {
  if (code == PointerCode::fixed) return pointer_width(j);
  return 2 * static_cast<std::uint64_t>(std::bit_width(target + 1)) - 1;
}

std::vector<Phrase> parse_phrases(const BitString& x) {
  std::vector<Phrase> phrases;
  std::vector<std::uint64_t> trie(2, 0);
  std::uint64_t node = 0;
  for (Bit b : x) {
    const std::uint64_t child = trie[2 * node + b];
    if (child != 0) {
      node = child;
      continue;
    }
    phrases.push_back({node, b, true});
    const std::uint64_t index = phrases.size();
    trie[2 * node + b] = index;
    trie.resize(2 * (index + 1), 0);
    node = 0;
  }
  if (node != 0) phrases.push_back({node, 0, false});
  return phrases;
}

std::vector<BitString> parse(const BitString& x) {
  const std::vector<Phrase> phrases = parse_phrases(x);
  std::vector<BitString> dict{BitString{}};
  std::vector<BitString> out;
  for (const Phrase& p : phrases) {
    if (p.complete) {
      dict.push_back(dict[p.parent]);
      dict.back().push_back(p.last);
      out.push_back(dict.back());
    } else {
      out.push_back(dict[p.parent]);
    }
  }
  return out;
}

namespace {

void put_bits(BitString& out, std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back(static_cast<Bit>((value >> i) & 1u));
}

void put_pointer(BitString& out, PointerCode code, std::uint64_t j, std::uint64_t target) {
  if (code == PointerCode::fixed) {
    put_bits(out, target, pointer_width(j));
    return;
  }
  const std::uint64_t v = target + 1;
  const auto width = static_cast<unsigned>(std::bit_width(v));
  put_bits(out, 0, width - 1);
  put_bits(out, v, width);
}

class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}

  Bit read() {
    if (pos_ >= bits_.size()) throw CorruptStream("LZ78 payload ends early");
    return bits_[pos_++];
  }
  std::uint64_t read(unsigned width) {
    if (width > 64) throw CorruptStream("LZ78 pointer too wide");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | read();
    return v;
  }
  bool done() const { return pos_ == bits_.size(); }

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

std::uint64_t get_pointer(BitReader& in, PointerCode code, std::uint64_t j) {
  if (code == PointerCode::fixed) return in.read(pointer_width(j));
  unsigned zeros = 0;
  while (in.read() == 0) {
    if (++zeros > 63) throw CorruptStream("LZ78 gamma code too long");
  }
  const std::uint64_t v = (std::uint64_t{1} << zeros) | in.read(zeros);
  return v - 1;
}

}  // namespace

LzCode encode_lz(const BitString& x, PointerCode code) {
  const std::vector<Phrase> phrases = parse_phrases(x);
  LzCode out;
  out.pointer_code = code;
  out.phrase_count = phrases.size();
  out.last_complete = phrases.empty() || phrases.back().complete;
  for (std::uint64_t j = 1; j <= phrases.size(); ++j) {
    const Phrase& p = phrases[j - 1];
    put_pointer(out.bits, code, j, p.parent);
    if (p.complete) out.bits.push_back(p.last);
  }
  return out;
}

BitString decode_lz(const LzCode& code) {
  BitReader in(code.bits);
  // Dictionary entries as (parent, bit, length); index 0 is λ.
  struct Entry {
    std::uint64_t parent;
    Bit bit;
    std::uint64_t length;
  };
  std::vector<Entry> dict{{0, 0, 0}};
  BitString out;
  std::vector<Bit> scratch;
  const auto emit_entry = [&](std::uint64_t index) {
    scratch.clear();
    for (std::uint64_t i = index; i != 0; i = dict[i].parent) scratch.push_back(dict[i].bit);
    for (auto it = scratch.rbegin(); it != scratch.rend(); ++it) out.push_back(*it);
  };
  for (std::uint64_t j = 1; j <= code.phrase_count; ++j) {
    const std::uint64_t p = get_pointer(in, code.pointer_code, j);
    if (p >= dict.size()) throw CorruptStream("LZ78 pointer outside the dictionary");
    if (j == code.phrase_count && !code.last_complete) {
      if (p == 0) throw CorruptStream("LZ78 incomplete tail points at the empty phrase");
      emit_entry(p);
      break;
    }
    const Bit b = in.read();
    dict.push_back({p, b, dict[p].length + 1});
    emit_entry(dict.size() - 1);
  }
  if (!in.done()) throw CorruptStream("LZ78 payload has trailing bits");
  return out;
}

LzMeter::LzMeter(PointerCode code) : code_(code), trie_(2, 0) {}

void LzMeter::push(Bit b) {
  const std::uint64_t child = trie_[2 * node_ + b];
  if (child != 0) {
    node_ = child;
    return;
  }
  ++phrases_;
  bits_ += pointer_bits(code_, phrases_, node_) + 1;
  trie_[2 * node_ + b] = phrases_;
  trie_.resize(2 * (phrases_ + 1), 0);
  node_ = 0;
}

std::uint64_t LzMeter::bits() const {
  if (node_ == 0) return bits_;
  return bits_ + pointer_bits(code_, phrases_ + 1, node_);
}

}  // namespace ppmlab
