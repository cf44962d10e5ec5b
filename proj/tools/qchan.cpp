// Command-line front end: classify, convert, complement, sweep, oracle.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "qchan/io.hpp"

using namespace qchan;
using io::json;

namespace {

struct Options {
  std::string input = "-";
  std::string out;
  std::string format = "json";
  std::string to = "choi";
  double tol = kDefaultMarginTol;
  double oracle_tol = 1e-7;
  std::size_t max_iter = 20000;
};

// Reading and parsing problems all count as input errors (exit 1).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

// Writes to --out when given, otherwise to stdout.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) throw InputError("cannot write " + o.out);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_json_format(const Options& o, const char* cmd) {
  if (o.format != "json") throw InputError(std::string(cmd) + " only supports --format json");
}

void run_classify(const Options& o) {
  const ClassificationReport r = classify(io::parse_channel(read_json(o.input)), o.tol);
  emit(o, o.format == "csv" ? io::report_to_csv(r) : dump(io::report_to_json(r)));
}

void run_convert(const Options& o) {
  require_json_format(o, "convert");
  const ChoiMatrix c = to_choi(io::parse_channel(read_json(o.input)));
  choi_rank(c, o.tol);  // rejects non-CP input before any conversion
  json out;
  if (o.to == "choi") {
    out = io::choi_to_json(c);
  } else if (o.to == "kraus") {
    out = io::kraus_to_json(kraus_from_choi(c, o.tol));
  } else {
    out = io::bloch_to_json(bloch_from_choi(c));
  }
  emit(o, dump(out));
}

void run_complement(const Options& o) {
  require_json_format(o, "complement");
  const ChannelInput in = io::parse_channel(read_json(o.input));
  const ChoiMatrix c = to_choi(in);
  choi_rank(c, o.tol);
  const KrausSet k = std::holds_alternative<KrausSet>(in) ? std::get<KrausSet>(in) : kraus_from_choi(c, o.tol);
  emit(o, dump(io::kraus_to_json(complement(k))));
}

void run_sweep(const Options& o) {
  if (o.format != "csv") throw InputError("sweep only supports --format csv");
  sweep::SweepSpec spec = io::parse_sweep(read_json(o.input));
  spec.tol = o.tol;
  const auto rows = sweep::sweep_parallel(spec);
  std::ostringstream s;
  sweep::write_csv(s, spec, rows);
  emit(o, s.str());
}

void run_oracle(const Options& o) {
  require_json_format(o, "oracle");
  const ChoiMatrix c = to_choi(io::parse_channel(read_json(o.input)));
  const Verdict analytic = antidegradable_test(c, o.tol);
  const symext::OracleResult r = symext::oracle_extendible(c, o.oracle_tol, o.max_iter);
  std::cout << dump(io::oracle_to_json(r, analytic));
  if (!o.out.empty()) {
    if (!r.witness) throw InputError("no witness to write: oracle status is not feasible");
    emit(o, dump(io::matrix_to_json(*r.witness)));
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Qubit channel classification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", o.tol, "Margin tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--format", o.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "Output path (oracle: witness path)");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Channel spec JSON file, '-' for stdin")->capture_default_str();
  };
  auto* classify_cmd = app.add_subcommand("classify", "Classify a channel");
  add_input(classify_cmd);
  auto* convert_cmd = app.add_subcommand("convert", "Convert between representations");
  add_input(convert_cmd);
  convert_cmd->add_option("--to", o.to, "Target representation")
      ->capture_default_str()
      ->check(CLI::IsMember({"choi", "kraus", "bloch"}));
  auto* complement_cmd = app.add_subcommand("complement", "Complementary channel");
  add_input(complement_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep to CSV");
  sweep_cmd->add_option("input", o.input, "Sweep spec JSON file, '-' for stdin")->capture_default_str();
  auto* oracle_cmd = app.add_subcommand("oracle", "Numerical symmetric-extension check");
  add_input(oracle_cmd);
  oracle_cmd->add_option("--oracle-tol", o.oracle_tol, "Oracle residual tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-iter", o.max_iter, "Oracle iteration budget")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  // Sweep output is CSV by default.
  if (sweep_cmd->parsed() && app.get_option("--format")->count() == 0) o.format = "csv";

  try {
    if (classify_cmd->parsed()) run_classify(o);
    if (convert_cmd->parsed()) run_convert(o);
    if (complement_cmd->parsed()) run_complement(o);
    if (sweep_cmd->parsed()) run_sweep(o);
    if (oracle_cmd->parsed()) run_oracle(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io::exit_code(e.kind());
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
