// torus-embed: embed simplices into regular polygonal tori and check the
// resulting certificates.
//
// Exit codes: 0 success, 1 bad input or usage, 2 input is not a simplex,
// 3 verification failed.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "torus_embed/errors.hpp"
#include "torus_embed/generate.hpp"
#include "torus_embed/io.hpp"
#include "torus_embed/pipeline.hpp"

namespace {

using namespace torus_embed;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotSimplex = 2;
constexpr int kExitVerify = 3;

double default_tolerance() {
  if (const char* env = std::getenv("TORUS_EMBED_TOL")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used == std::string(env).size() && v > 0.0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid TORUS_EMBED_TOL='" << env << "'\n";
  }
  return kDefaultAcceptTol;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void print_pair(const PairError& e) {
  std::cout << "  pair (" << e.i << ", " << e.j << "): expected " << fmt(e.expected) << ", torus "
            << fmt(e.actual) << ", rel error " << fmt(e.rel_error) << "\n";
}

struct EmbedArgs {
  std::string input;
  std::string output;
  std::optional<double> tolerance;
  bool uniform_m = false;
  double alpha_fraction = 1.0;
  bool quiet = false;
};

int run_embed(const EmbedArgs& args) {
  PipelineConfig cfg;
  cfg.accept_tol = args.tolerance.value_or(default_tolerance());
  cfg.uniform_m = args.uniform_m;
  cfg.alpha_fraction = args.alpha_fraction;
  try {
    const auto input = io::parse_input(io::read_json(args.input));
    const EmbeddingCertificate cert =
        std::visit([&](const auto& in) { return embed_simplex(in, cfg); }, input);
    io::write_file(args.output, io::dump_canonical(io::certificate_to_json(cert)));
    if (!args.quiet) {
      std::cout << "wrote " << args.output << ": " << cert.assignment.size() << " points, "
                << cert.torus.factors.size() << " factors, max rel error "
                << fmt(cert.errors ? cert.errors->max_rel : 0.0) << "\n";
    }
    return kExitOk;
  } catch (const NotSimplex& e) {
    std::cerr << "input is not a simplex: " << e.what() << "\n";
    return kExitNotSimplex;
  } catch (const VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run_verify(const std::string& path, std::optional<double> tolerance) {
  EmbeddingCertificate cert;
  try {
    cert = io::certificate_from_json(io::read_json(path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const VerificationReport report = verify_certificate(cert, tolerance.value_or(default_tolerance()));
  std::cout << "pairs checked: " << report.pairs_checked << "\n"
            << "max abs error: " << fmt(report.max_abs) << "\n"
            << "max rel error: " << fmt(report.max_rel) << "\n"
            << "tolerance:     " << fmt(report.tol) << "\n";
  if (report.pass) {
    std::cout << "PASS\n";
    return kExitOk;
  }
  std::cout << "FAIL: " << report.failing_pairs << " pair(s) out of tolerance\n";
  for (const auto& e : report.failures) print_pair(e);
  return kExitVerify;
}

int run_gen(const std::string& kind, std::size_t n, std::uint64_t seed, double noise,
            const std::string& output) {
  try {
    const std::string text =
        io::dump_canonical(io::points_to_json(generate_input(parse_input_kind(kind), n, seed, noise)));
    if (output.empty() || output == "-") {
      std::cout << text;
    } else {
      io::write_file(output, text);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run_inspect(const std::string& path, bool as_json) {
  EmbeddingCertificate cert;
  try {
    cert = io::certificate_from_json(io::read_json(path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const io::Json s = io::inspect_summary(cert);
  if (as_json) {
    std::cout << io::dump_canonical(s);
    return kExitOk;
  }
  std::cout << "points          " << s["points"].get<std::size_t>() << "\n"
            << "factors         " << s["factor_count"].get<std::size_t>() << "\n"
            << "ambient dim     " << s["ambient_dim"].get<std::size_t>() << "\n"
            << "radius range    [" << fmt(s["radius_min"].get<double>()) << ", "
            << fmt(s["radius_max"].get<double>()) << "]\n";
  if (s.contains("alpha")) {
    std::cout << "alpha           " << fmt(s["alpha"].get<double>()) << "\n"
              << "delta           " << fmt(s["delta"].get<double>()) << "\n"
              << "mode            " << s["mode"].get<std::string>() << "\n";
  }
  if (s.contains("max_rel")) {
    std::cout << "max abs error   " << fmt(s["max_abs"].get<double>()) << "\n"
              << "max rel error   " << fmt(s["max_rel"].get<double>()) << "\n";
  }
  std::cout << "polygon orders:\n";
  for (const auto& o : s["orders"]) {
    std::cout << "  m = " << o["m"].get<std::string>() << "  (" << o["bits"].get<std::size_t>()
              << " bits, " << o["factors"].get<std::size_t>() << " factors)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embed simplices isometrically into regular polygonal tori"};
  app.require_subcommand(1);

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "Build and self-check an embedding certificate");
  embed_cmd->add_option("input", embed.input, "Input JSON with points or squared_distances")->required();
  embed_cmd->add_option("output", embed.output, "Certificate output path")->required();
  embed_cmd->add_option("--tolerance", embed.tolerance, "Relative tolerance on squared distances");
  embed_cmd->add_flag("--uniform-m", embed.uniform_m, "Use the delta-embedding polygon order for every factor");
  embed_cmd->add_option("--alpha-fraction", embed.alpha_fraction, "alpha^2 as a fraction of lambda_min, in (0, 2)");
  embed_cmd->add_flag("--quiet", embed.quiet, "No summary output");

  std::string verify_path;
  std::optional<double> verify_tol;
  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate using chord distances only");
  verify_cmd->add_option("certificate", verify_path, "Certificate JSON")->required();
  verify_cmd->add_option("--tolerance", verify_tol, "Relative tolerance on squared distances");

  std::string gen_kind;
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  double gen_noise = 0.01;
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a test simplex");
  gen_cmd->add_option("kind", gen_kind, "regular | random | perturbed")->required();
  gen_cmd->add_option("n", gen_n, "Number of points")->required();
  gen_cmd->add_option("--seed", gen_seed, "RNG seed");
  gen_cmd->add_option("--noise", gen_noise, "Coordinate noise for 'perturbed'");
  gen_cmd->add_option("-o,--output", gen_output, "Output path (default stdout)");

  std::string inspect_path;
  bool inspect_json = false;
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize a certificate");
  inspect_cmd->add_option("certificate", inspect_path, "Certificate JSON")->required();
  inspect_cmd->add_flag("--json", inspect_json, "Machine-readable summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*embed_cmd) return run_embed(embed);
  if (*verify_cmd) return run_verify(verify_path, verify_tol);
  if (*gen_cmd) return run_gen(gen_kind, gen_n, gen_seed, gen_noise, gen_output);
  if (*inspect_cmd) return run_inspect(inspect_path, inspect_json);
  return kExitInput;
}
