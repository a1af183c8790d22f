#pragma once

// Exact-precision arithmetic coding over the PPM emission chains.
//
// The interval is kept as [low/den, (low+width)/den) with arbitrary
// precision integers; no renormalisation takes place. A finished interval
// of width w is named by the smallest dyadic c = m/2^l in it with
// l = ceil(-log2 w), one bit above the content length -ceil(log2 w) at most.

#include <cstdint>

#include <gmpxx.h>

#include "ppmlab/bitstring.hpp"
#include "ppmlab/ppm_model.hpp"

namespace ppmlab {

class CodeInterval {
 public:
  CodeInterval();

  /// Keep the sub-interval [low/total, high/total) of the current one.
  void narrow(std::uint64_t low, std::uint64_t high, std::uint64_t total);
  void narrow(const EventRange& r) { narrow(r.low, r.high, r.total); }
  /// Same with rational bounds 0 <= event_low < event_high <= 1.
  void narrow(const mpq_class& event_low, const mpq_class& event_high);

  mpq_class lo() const;
  mpq_class hi() const;
  mpq_class width() const;

  /// -ceil(log2 width), i.e. floor(-log2 width).
  std::uint64_t content_bits() const;
  /// ceil(-log2 width): at this length some multiple of 2^-l always lies
  /// inside the interval.
  std::uint64_t code_bits() const;

  const mpz_class& low_numerator() const noexcept { return low_; }
  const mpz_class& width_numerator() const noexcept { return width_; }
  const mpz_class& denominator() const noexcept { return den_; }

 private:
  void narrow_exact(const mpz_class& low, const mpz_class& high, const mpz_class& total);

  mpz_class low_;
  mpz_class width_;
  mpz_class den_;
};

/// Code bits plus the out-of-band count of source bits they encode.
struct CodeOutput {
  BitString bits;
  std::uint64_t declared_length = 0;

  friend bool operator==(const CodeOutput&, const CodeOutput&) = default;
};

/// Smallest dyadic with code_bits() bits inside the interval.
CodeOutput finalize(const CodeInterval& iv, std::uint64_t declared_length = 0);

/// The rational named by a code bit string, sum bits[i] 2^{-(i+1)}.
mpq_class code_value(const BitString& bits);

/// Streaming PPM encoder.
class Encoder {
 public:
  explicit Encoder(ModelConfig config);

  /// Codes one bit; returns the chain that was used.
  const EmissionChain& push(Bit b);
  CodeOutput finish() const { return finalize(interval_, length_); }

  const CodeInterval& interval() const noexcept { return interval_; }
  const ContextModel& model() const noexcept { return model_; }
  /// Sum of -log2 p over all emissions so far.
  double ideal_bits() const noexcept { return ideal_bits_; }
  std::uint64_t length() const noexcept { return length_; }

 private:
  ContextModel model_;
  CodeInterval interval_;
  EmissionChain last_chain_;
  double ideal_bits_ = 0.0;
  std::uint64_t length_ = 0;
};

/// Streaming PPM decoder mirroring Encoder.
class Decoder {
 public:
  Decoder(const BitString& code, ModelConfig config);

  /// Decodes the next source bit. Throws CorruptStream when the code value
  /// lies outside every event slot.
  Bit pull();
  const ContextModel& model() const noexcept { return model_; }

 private:
  ContextModel model_;
  // Position of the code value inside the current interval, as num/den.
  mpz_class num_;
  mpz_class den_;
  mpz_class scratch_;
};

/// Model-only accounting of -log2 p, no interval arithmetic.
class IdealMeter {
 public:
  explicit IdealMeter(ModelConfig config) : model_(config) {}

  /// Adds the cost of coding `b` and returns it.
  double push(Bit b);
  double bits() const noexcept { return bits_; }
  const ContextModel& model() const noexcept { return model_; }

 private:
  ContextModel model_;
  double bits_ = 0.0;
};

struct EncodeResult {
  CodeOutput code;
  double ideal_bits = 0.0;
  std::uint64_t content_bits = 0;  // -ceil(log2 width)
};

EncodeResult encode(ModelConfig config, const BitString& input);
BitString decode(const CodeOutput& code, std::uint64_t length, ModelConfig config);

}  // namespace ppmlab
