// ppmlab: generate S, compress and decompress with PPM*/PPM_k/LZ78, print
// ratio curves and run the verification suites.
//
// Exit codes: 0 success, 1 verification failure or corrupt input,
// 2 usage or resource-limit error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppmlab/arith_coder.hpp"
#include "ppmlab/formats.hpp"
#include "ppmlab/harness.hpp"
#include "ppmlab/lz78.hpp"
#include "ppmlab/ppm_model.hpp"
#include "ppmlab/sequence.hpp"

namespace {

using namespace ppmlab;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string path;
  bool packed = false;
  std::uint64_t bits = UINT64_MAX;
};

BitString read_input(const InputOptions& in) {
  std::ifstream f(in.path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + in.path);
  return formats::read_sequence(f, in.packed, in.bits);
}

std::unique_ptr<std::ostream> open_output(const std::string& path, std::ostream*& out) {
  if (path.empty() || path == "-") {
    out = &std::cout;
    return nullptr;
  }
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*f) throw UsageError("cannot write " + path);
  out = f.get();
  return f;
}

PointerCode parse_pointer_code(const std::string& s) { return s == "gamma" ? PointerCode::gamma : PointerCode::fixed; }

ModelConfig model_for(const std::string& algo, const std::optional<unsigned>& k) {
  if (algo == "ppm_star") return ModelConfig::star();
  if (algo == "ppm_k") {
    if (!k) throw UsageError("--k is required for ppm_k");
    return ModelConfig::bounded(*k);
  }
  throw UsageError("algorithm " + algo + " has no context model");
}

std::string ratio_text(std::uint64_t out_bits, std::uint64_t in_bits) {
  if (in_bits == 0) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(out_bits) / static_cast<double>(in_bits));
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_gen(unsigned n_max, bool packed, const std::string& out_path, unsigned max_order) {
  const SequencePrefix seq = sequence_through(n_max, max_order);
  std::ostream* out = nullptr;
  const auto holder = open_output(out_path, out);
  formats::write_sequence(*out, seq.data, packed);
  out->flush();
  std::ostream& table = holder ? std::cout : std::cerr;
  table << "zone\tstart\tlength\n";
  for (unsigned n = 1; n <= n_max; ++n) table << n << "\t" << seq.boundary(n) << "\t" << zone_length(n) << "\n";
  table << "total\t" << seq.data.size() << "\n";
  return kOk;
}

int cmd_compress(const std::string& algo, const std::optional<unsigned>& k, const std::string& pointer,
                 const InputOptions& in, const std::string& out_path, bool ideal_only, bool dump_model) {
  const BitString x = read_input(in);
  if (algo == "lz78") {
    const LzCode code = encode_lz(x, parse_pointer_code(pointer));
    if (!ideal_only) {
      std::ostream* out = nullptr;
      const auto holder = open_output(out_path, out);
      formats::write_lz(*out, code);
    }
    std::cerr << "algo=lz78 input_bits=" << x.size() << " output_bits=" << code.bits.size()
              << " ratio=" << ratio_text(code.bits.size(), x.size()) << " phrases=" << code.phrase_count << "\n";
    return kOk;
  }
  const ModelConfig cfg = model_for(algo, k);
  std::uint64_t bits = 0;
  double ideal = 0.0;
  std::unique_ptr<ContextModel> final_model;
  if (ideal_only) {
    IdealMeter meter(cfg);
    for (Bit b : x) meter.push(b);
    ideal = meter.bits();
    bits = static_cast<std::uint64_t>(std::ceil(ideal - 1e-9));
    if (dump_model) final_model = std::make_unique<ContextModel>(meter.model());
  } else {
    Encoder enc(cfg);
    for (Bit b : x) enc.push(b);
    const CodeOutput code = enc.finish();
    ideal = enc.ideal_bits();
    bits = code.bits.size();
    std::ostream* out = nullptr;
    const auto holder = open_output(out_path, out);
    formats::write_ppm(*out, {cfg, code});
    if (dump_model) final_model = std::make_unique<ContextModel>(enc.model());
  }
  std::cerr << "algo=" << cfg.name() << " input_bits=" << x.size() << " output_bits=" << bits
            << " ideal_bits=" << ideal << " ratio=" << ratio_text(bits, x.size()) << "\n";
  if (final_model) std::cerr << final_model->snapshot().render_table();
  return kOk;
}

int cmd_decompress(const std::string& in_path, const std::string& out_path, bool packed) {
  std::ifstream f(in_path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + in_path);
  BitString x;
  switch (formats::sniff(f)) {
    case formats::CodeKind::ppm: {
      const auto file = formats::read_ppm(f);
      x = decode(file.code, file.code.declared_length, file.config);
      break;
    }
    case formats::CodeKind::lz78:
      x = decode_lz(formats::read_lz(f));
      break;
    case formats::CodeKind::unknown:
      throw CorruptStream("not a ppmlab code file");
  }
  std::ostream* out = nullptr;
  const auto holder = open_output(out_path, out);
  formats::write_sequence(*out, x, packed);
  return kOk;
}

int cmd_ratio_curve(std::vector<std::string> algos, std::vector<unsigned> ks, unsigned n_max,
                    const std::vector<std::uint64_t>& points, bool ideal_only, const std::string& pointer,
                    const std::string& out_path, bool extended) {
  const unsigned limit = extended ? 16 : 14;
  if (n_max == 0 || n_max > limit) {
    throw UsageError("--n-max must be in 1.." + std::to_string(limit) + (extended ? "" : " (use --extended for up to 16)"));
  }
  if (algos.empty()) algos = {"ppm_star", "ppm_k", "lz78"};
  if (ks.empty()) ks = {1, 2, 3, 4, 5};
  std::vector<harness::RunSpec> runs;
  for (const auto& a : algos) {
    const auto algo = harness::parse_algo(a);
    if (!algo) throw UsageError("unknown algorithm " + a);
    if (*algo == harness::Algo::ppm_k) {
      for (unsigned k : ks) runs.push_back(harness::RunSpec::bounded(k));
    } else if (*algo == harness::Algo::lz78) {
      runs.push_back(harness::RunSpec::lz(parse_pointer_code(pointer)));
    } else {
      runs.push_back(harness::RunSpec::star());
    }
  }
  harness::CurveOptions opt;
  opt.ideal_only = ideal_only;
  opt.points = points.empty() ? harness::default_sample_points(n_max) : points;
  const std::string csv = harness::to_csv(harness::ratio_curve(runs, opt));
  std::ostream* out = nullptr;
  const auto holder = open_output(out_path, out);
  *out << csv;
  return kOk;
}

int cmd_verify(const std::string& suite) {
  const auto result = harness::run_suite(suite, [](const std::string& line) { std::cout << line << "\n" << std::flush; });
  std::cout << (result.passed ? "PASS " : "FAIL ") << result.name << " (" << result.seconds << " s)\n";
  return result.passed ? kOk : kFailed;
}

std::string event_text(Event e) { return e == Event::escape ? "$" : e == Event::one ? "1" : "0"; }

int cmd_trace(const std::string& algo, const std::optional<unsigned>& k, const std::string& pointer, const InputOptions& in) {
  const BitString x = read_input(in);
  if (algo == "lz78") {
    const auto phrases = parse(x);
    const auto code = encode_lz(x, parse_pointer_code(pointer));
    std::cout << "phrase\ttext\n";
    for (std::size_t i = 0; i < phrases.size(); ++i) std::cout << i + 1 << "\t" << phrases[i].to_string() << "\n";
    std::cout << "phrases=" << phrases.size() << " output_bits=" << code.bits.size() << "\n";
    return kOk;
  }
  ContextModel model(model_for(algo, k));
  double total = 0.0;
  std::cout << "pos\tbit\tchain\tbits\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    const EmissionChain chain = model.emit(x[i]);
    std::ostringstream line;
    double cost = 0.0;
    for (const auto& e : chain) {
      const std::string ctx = e.context_length ? (*e.context_length == 0 ? "λ" : model.history().suffix(*e.context_length).to_string()) : "-1";
      line << "(" << ctx << "," << event_text(e.event) << "," << e.probability().to_string() << ")";
      cost += e.probability().bits();
    }
    total += cost;
    std::cout << i << "\t" << int(x[i]) << "\t" << line.str() << "\t" << cost << "\n";
    model.update(x[i]);
  }
  std::cout << "total_bits=" << total << "\n";
  return kOk;
}

int cmd_dump_model(const std::string& algo, const std::optional<unsigned>& k, const InputOptions& in, const std::string& format) {
  const BitString x = read_input(in);
  ContextModel model(model_for(algo, k));
  for (Bit b : x) model.update(b);
  const auto snap = model.snapshot();
  std::cout << (format == "tsv" ? snap.render_tsv() : snap.render_table());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PPM*, bounded PPM and LZ78 on de Bruijn enumeration sequences"};
  app.require_subcommand(1);

  std::string algo = "ppm_star";
  std::optional<unsigned> k;
  std::string pointer = "fixed";
  std::string out_path;
  bool packed = false;
  bool ideal_only = false;
  InputOptions in;

  const std::vector<std::string> algo_names{"ppm_star", "ppm_k", "lz78"};
  const auto add_algo = [&](CLI::App* cmd) {
    cmd->add_option("--algo", algo, "ppm_star, ppm_k or lz78")->check(CLI::IsMember(algo_names));
    cmd->add_option("--k", k, "context bound for ppm_k");
    cmd->add_option("--pointer-code", pointer, "LZ78 pointer code")->check(CLI::IsMember({"fixed", "gamma"}));
  };
  const auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", in.path, "sequence file")->required();
    cmd->add_flag("--packed", in.packed, "input is packed 8 bits per byte");
    cmd->add_option("--bits", in.bits, "number of bits to take from a packed input");
  };

  unsigned n_max = 14;
  unsigned max_order = kDefaultMaxOrder;
  auto* gen = app.add_subcommand("gen", "write S_1..S_n and print the zone table");
  gen->add_option("--n-max", n_max, "last zone")->required();
  gen->add_flag("--packed", packed, "pack 8 bits per byte");
  gen->add_option("--out", out_path, "output file (default stdout)");
  gen->add_option("--max-order", max_order, "largest de Bruijn order allowed");

  bool dump_model = false;
  auto* compress = app.add_subcommand("compress", "compress a sequence file");
  add_algo(compress);
  add_input(compress);
  compress->add_option("--out", out_path, "code file (default stdout)");
  compress->add_flag("--ideal-length-only", ideal_only, "report sum of -log2 p, write no code");
  compress->add_flag("--dump-model", dump_model, "print the final model table to stderr");

  std::string code_path;
  auto* decompress = app.add_subcommand("decompress", "decode a code file");
  decompress->add_option("input", code_path, "code file")->required();
  decompress->add_option("--out", out_path, "sequence file (default stdout)");
  decompress->add_flag("--packed", packed, "write packed output");

  std::vector<std::string> algos;
  std::vector<unsigned> ks;
  std::vector<std::uint64_t> points;
  bool extended = false;
  auto* curve = app.add_subcommand("ratio-curve", "CSV of compression ratios on prefixes of S");
  curve->add_option("--algo", algos, "algorithms (default all)")->check(CLI::IsMember(algo_names));
  curve->add_option("--k", ks, "bounds for ppm_k (default 1..5)");
  curve->add_option("--n-max", n_max, "last zone (default 14)");
  curve->add_option("--points", points, "prefix lengths (default zone and bad-zone ends)");
  curve->add_flag("--ideal-length-only", ideal_only, "use sum of -log2 p at every point");
  curve->add_option("--pointer-code", pointer, "LZ78 pointer code")->check(CLI::IsMember({"fixed", "gamma"}));
  curve->add_flag("--extended", extended, "allow --n-max up to 16");
  curve->add_option("--out", out_path, "CSV file (default stdout)");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->check(CLI::IsMember(harness::suite_names()));

  auto* trace = app.add_subcommand("trace", "per-bit emission chains");
  add_algo(trace);
  add_input(trace);

  std::string format = "table";
  auto* dump = app.add_subcommand("dump-model", "print the model after reading a sequence");
  add_algo(dump);
  add_input(dump);
  dump->add_option("--format", format, "table or tsv")->check(CLI::IsMember({"table", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(n_max, packed, out_path, max_order);
    if (*compress) return cmd_compress(algo, k, pointer, in, out_path, ideal_only, dump_model);
    if (*decompress) return cmd_decompress(code_path, out_path, packed);
    if (*curve) return cmd_ratio_curve(algos, ks, n_max, points, ideal_only, pointer, out_path, extended);
    if (*verify) return cmd_verify(suite);
    if (*trace) return cmd_trace(algo, k, pointer, in);
    if (*dump) return cmd_dump_model(algo, k, in, format);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CorruptStream& e) {
    std::cerr << "corrupt input: " << e.what() << "\n";
    return kFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
