#include "ppmlab/arith_coder.hpp"

#include <stdexcept>

namespace ppmlab {

namespace {

mpz_class from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace

CodeInterval::CodeInterval() : low_(0), width_(1), den_(1) {}

void CodeInterval::narrow_exact(const mpz_class& low, const mpz_class& high, const mpz_class& total) {
  if (!(low < high) || low < 0 || high > total) throw std::logic_error("empty or invalid event slot");
  // low/den + (width/den)(l/t) = (low*t + width*l) / (den*t)
  low_ = low_ * total + width_ * low;
  width_ *= high - low;
  den_ *= total;
}

void CodeInterval::narrow(std::uint64_t low, std::uint64_t high, std::uint64_t total) {
  if (low >= high || high > total) throw std::logic_error("empty or invalid event slot");
  if (total <= 0xFFFFFFFFu) {
    low_ *= static_cast<unsigned long>(total);
    low_ += width_ * static_cast<unsigned long>(low);
    width_ *= static_cast<unsigned long>(high - low);
    den_ *= static_cast<unsigned long>(total);
    return;
  }
  narrow_exact(from_u64(low), from_u64(high), from_u64(total));
}

void CodeInterval::narrow(const mpq_class& event_low, const mpq_class& event_high) {
  if (event_low < 0 || event_high > 1 || !(event_low < event_high)) {
    throw std::logic_error("event bounds must satisfy 0 <= low < high <= 1");
  }
  mpz_class common;
  mpz_lcm(common.get_mpz_t(), event_low.get_den_mpz_t(), event_high.get_den_mpz_t());
  const mpz_class lo = event_low.get_num() * (common / event_low.get_den());
  const mpz_class hi = event_high.get_num() * (common / event_high.get_den());
  narrow_exact(lo, hi, common);
}

mpq_class CodeInterval::lo() const {
  mpq_class q(low_, den_);
  q.canonicalize();
  return q;
}

mpq_class CodeInterval::hi() const {
  mpq_class q(low_ + width_, den_);
  q.canonicalize();
  return q;
}

mpq_class CodeInterval::width() const {
  mpq_class q(width_, den_);
  q.canonicalize();
  return q;
}

std::uint64_t CodeInterval::content_bits() const {
  // Largest l with width * 2^l <= den.
  const auto den_bits = mpz_sizeinbase(den_.get_mpz_t(), 2);
  const auto width_bits = mpz_sizeinbase(width_.get_mpz_t(), 2);
  std::int64_t l = static_cast<std::int64_t>(den_bits) - static_cast<std::int64_t>(width_bits) + 1;
  if (l < 0) l = 0;
  mpz_class scaled;
  for (;; --l) {
    mpz_mul_2exp(scaled.get_mpz_t(), width_.get_mpz_t(), static_cast<mp_bitcnt_t>(l));
    if (scaled <= den_ || l == 0) break;
  }
  return static_cast<std::uint64_t>(l);
}

std::uint64_t CodeInterval::code_bits() const {
  const std::uint64_t l = content_bits();
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), width_.get_mpz_t(), static_cast<mp_bitcnt_t>(l));
  return scaled == den_ ? l : l + 1;
}

CodeOutput finalize(const CodeInterval& iv, std::uint64_t declared_length) {
  const mpz_class& low = iv.low_numerator();
  const mpz_class& den = iv.denominator();
  const mpz_class high = low + iv.width_numerator();
  const std::uint64_t base = iv.code_bits();
  mpz_class scaled_low, scaled_high, m, check;
  for (std::uint64_t l = base; l <= base + 1; ++l) {
    // m = ceil(low * 2^l / den); accept when m/2^l < high/den.
    mpz_mul_2exp(scaled_low.get_mpz_t(), low.get_mpz_t(), l);
    mpz_cdiv_q(m.get_mpz_t(), scaled_low.get_mpz_t(), den.get_mpz_t());
    mpz_mul_2exp(scaled_high.get_mpz_t(), high.get_mpz_t(), l);
    check = m * den;
    if (check < scaled_high) {
      CodeOutput out;
      out.declared_length = declared_length;
      out.bits.reserve(l);
      for (std::uint64_t i = 0; i < l; ++i) {
        out.bits.push_back(static_cast<Bit>(mpz_tstbit(m.get_mpz_t(), l - 1 - i)));
      }
      return out;
    }
  }
  throw std::logic_error("no dyadic of the expected length inside the interval");
}

mpq_class code_value(const BitString& bits) {
  mpz_class num = 0;
  for (Bit b : bits) {
    num *= 2;
    num += b;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits.size());
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------

Encoder::Encoder(ModelConfig config) : model_(config) {}

const EmissionChain& Encoder::push(Bit b) {
  last_chain_ = model_.emit(b);
  for (const Emission& e : last_chain_) {
    interval_.narrow(e.range);
    ideal_bits_ += e.probability().bits();
  }
  model_.update(b);
  ++length_;
  return last_chain_;
}

Decoder::Decoder(const BitString& code, ModelConfig config) : model_(config), num_(0), den_(1) {
  for (Bit b : code) {
    num_ *= 2;
    num_ += b;
  }
  mpz_mul_2exp(den_.get_mpz_t(), den_.get_mpz_t(), code.size());
}

Bit Decoder::pull() {
  PredictionCursor cursor = model_.cursor();
  mpz_class bound;
  for (;;) {
    const Distribution& d = cursor.current();
    const std::uint64_t total = d.total();
    // v = num/den; the event e with low_e <= v*total < high_e is chosen.
    scratch_ = num_ * static_cast<unsigned long>(total);
    std::optional<Event> chosen;
    EventRange range;
    for (Event e : {Event::zero, Event::one, Event::escape}) {
      range = d.range(e);
      if (range.low == range.high) continue;
      bound = den_ * static_cast<unsigned long>(range.high);
      if (scratch_ < bound) {
        chosen = e;
        break;
      }
    }
    if (!chosen) throw CorruptStream("code value lies outside the coding interval");
    // v' = (v*total - low) / (high - low)
    scratch_ -= den_ * static_cast<unsigned long>(range.low);
    if (scratch_ < 0) throw CorruptStream("code value lies outside the coding interval");
    num_ = scratch_;
    den_ *= static_cast<unsigned long>(range.high - range.low);
    if (*chosen == Event::escape) {
      cursor.escape();
      continue;
    }
    const Bit b = *chosen == Event::one ? 1 : 0;
    model_.update(b);
    return b;
  }
}

double IdealMeter::push(Bit b) {
  double cost = 0.0;
  for (const Emission& e : model_.emit(b)) cost += e.probability().bits();
  model_.update(b);
  bits_ += cost;
  return cost;
}

EncodeResult encode(ModelConfig config, const BitString& input) {
  Encoder enc(config);
  for (Bit b : input) enc.push(b);
  return {enc.finish(), enc.ideal_bits(), enc.interval().content_bits()};
}

BitString decode(const CodeOutput& code, std::uint64_t length, ModelConfig config) {
  Decoder dec(code.bits, config);
  BitString out;
  out.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) out.push_back(dec.pull());
  return out;
}

}  // namespace ppmlab
