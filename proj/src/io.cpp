#include "qchan/io.hpp"

#include <sstream>

namespace qchan::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidParameter, what); }

double number(const json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  return j.get<double>();
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

double param(const json& doc, const char* key) { return number(field(doc, key), key); }

Vec3 vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) bad(what + " must be an array of 3 numbers");
  return {number(j[0], what), number(j[1], what), number(j[2], what)};
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("complex entries must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

KrausSet named_channel(const json& doc) {
  const json& name_field = field(doc, "name");
  if (!name_field.is_string()) bad("\"name\" must be a string");
  const std::string name = name_field.get<std::string>();
  if (name == "identity") return channels::identity();
  if (name == "depolarizing") return channels::depolarizing(param(doc, "p"));
  if (name == "completely_depolarizing") return channels::completely_depolarizing();
  if (name == "completely_dephasing") return channels::completely_dephasing();
  if (name == "dephasing") return channels::dephasing(param(doc, "alpha"));
  if (name == "amplitude_damping") return channels::amplitude_damping(param(doc, "alpha"));
  if (name == "rank2") return channels::rank2(param(doc, "alpha"), param(doc, "beta"));
  bad("unknown channel name \"" + name + "\"");
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) bad("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const json& row : j) {
    if (!row.is_array() || row.size() != cols) bad("matrix rows must have equal length");
    for (const json& z : row) entries.push_back(complex_from_json(z));
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

json matrix_to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

ChannelInput parse_channel(const json& doc) {
  if (!doc.is_object()) bad("channel spec must be a JSON object");
  const json& kind_field = field(doc, "kind");
  if (!kind_field.is_string()) bad("\"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();

  if (kind == "kraus") {
    const json& ops = field(doc, "operators");
    if (!ops.is_array() || ops.empty()) bad("\"operators\" must be a non-empty array");
    std::vector<ComplexMatrix> mats;
    for (const json& op : ops) {
      ComplexMatrix m = matrix_from_json(op);
      if (m.cols() != 2) bad("Kraus operators must have 2 columns");
      if (!mats.empty() && m.rows() != mats.front().rows()) bad("Kraus operators must share a shape");
      mats.push_back(std::move(m));
    }
    return KrausSet(std::move(mats));
  }
  if (kind == "choi") {
    ComplexMatrix m = matrix_from_json(field(doc, "matrix"));
    if (m.rows() != 4 || m.cols() != 4) bad("Choi matrix must be 4x4");
    return ChoiMatrix(std::move(m));
  }
  if (kind == "bloch") {
    const Vec3 t = vec3(field(doc, "t"), "t");
    if (doc.contains("T")) {
      if (doc.contains("lambda")) bad("give either \"lambda\" or \"T\", not both");
      const json& tj = doc.at("T");
      if (!tj.is_array() || tj.size() != 3) bad("\"T\" must be a 3x3 array");
      PauliTransfer p{t, {}};
      for (std::size_t i = 0; i < 3; ++i) p.T[i] = vec3(tj[i], "T row");
      return p;
    }
    return BlochParams{t, vec3(field(doc, "lambda"), "lambda")};
  }
  if (kind == "named") {
    if (doc.contains("name") && doc.at("name") == "unital") {
      return channels::unital(vec3(field(doc, "lambda"), "lambda"));
    }
    return named_channel(doc);
  }
  bad("unknown kind \"" + kind + "\"");
}

sweep::SweepSpec parse_sweep(const json& doc) {
  if (!doc.is_object()) bad("sweep spec must be a JSON object");
  sweep::SweepSpec spec;
  const json& fam = field(doc, "family");
  if (!fam.is_string()) bad("\"family\" must be a string");
  const auto family = sweep::family_from_string(fam.get<std::string>());
  if (!family) bad("unknown family \"" + fam.get<std::string>() + "\"");
  spec.family = *family;

  const json& axes = field(doc, "axes");
  if (!axes.is_array()) bad("\"axes\" must be an array");
  for (const json& a : axes) {
    if (!a.is_object()) bad("axis must be an object with min, max, steps");
    const json& steps = field(a, "steps");
    if (!steps.is_number_unsigned()) bad("\"steps\" must be a non-negative integer");
    spec.axes.push_back({param(a, "min"), param(a, "max"), steps.get<std::size_t>()});
  }
  if (doc.contains("direction")) spec.direction = vec3(doc.at("direction"), "direction");
  if (doc.contains("outputs")) {
    const json& outs = doc.at("outputs");
    if (!outs.is_array()) bad("\"outputs\" must be an array of column names");
    spec.outputs.clear();
    for (const json& o : outs) {
      const auto col = o.is_string() ? sweep::column_from_string(o.get<std::string>()) : std::nullopt;
      if (!col) bad("unknown output column " + o.dump());
      spec.outputs.push_back(*col);
    }
  }
  sweep::validate(spec);
  return spec;
}

json verdict_to_json(const Verdict& v) {
  return {{"state", to_string(v.state)}, {"margin", v.margin}};
}

json report_to_json(const ClassificationReport& r) {
  json out;
  out["antidegradable"] = verdict_to_json(r.antidegradable);
  out["degradable"] = verdict_to_json(r.degradable);
  out["entanglement_breaking"] = verdict_to_json(r.entanglement_breaking);
  out["unital"] = r.unital;
  out["self_complementary"] = r.self_complementary ? json(*r.self_complementary) : json(nullptr);
  out["choi_rank"] = r.choi_rank;
  out["cp"] = r.cp;
  out["min_choi_eigenvalue"] = r.min_choi_eigenvalue;
  out["tp_residual"] = r.tp_residual;
  return out;
}

std::string report_to_csv(const ClassificationReport& r) {
  using sweep::format_double;
  std::ostringstream s;
  s << "anti_state,anti_margin,deg_state,deg_margin,eb_state,eb_margin,unital,"
       "self_complementary,choi_rank,cp,min_choi_eigenvalue,tp_residual\n";
  s << to_string(r.antidegradable.state) << ',' << format_double(r.antidegradable.margin) << ','
    << to_string(r.degradable.state) << ',' << format_double(r.degradable.margin) << ','
    << to_string(r.entanglement_breaking.state) << ','
    << format_double(r.entanglement_breaking.margin) << ',' << (r.unital ? "true" : "false") << ','
    << (r.self_complementary ? (*r.self_complementary ? "true" : "false") : "") << ','
    << r.choi_rank << ',' << (r.cp ? "true" : "false") << ','
    << format_double(r.min_choi_eigenvalue) << ',' << format_double(r.tp_residual) << '\n';
  return s.str();
}

json choi_to_json(const ChoiMatrix& c) {
  return {{"kind", "choi"}, {"matrix", matrix_to_json(c.matrix())}};
}

json kraus_to_json(const KrausSet& k) {
  json ops = json::array();
  for (const auto& op : k.operators()) ops.push_back(matrix_to_json(op));
  return {{"kind", "kraus"}, {"output_dim", k.output_dim()}, {"operators", std::move(ops)}};
}

json bloch_to_json(const PauliTransfer& p) {
  json out{{"kind", "bloch"}, {"t", p.t}};
  if (const auto b = p.as_bloch()) {
    out["lambda"] = b->lambda;
  } else {
    out["T"] = p.T;
  }
  return out;
}

json oracle_to_json(const symext::OracleResult& r, const Verdict& analytic) {
  return {{"oracle",
           {{"status", symext::to_string(r.status)},
            {"residual", r.residual},
            {"iterations", r.iterations},
            {"fallback", r.fallback}}},
          {"analytic", verdict_to_json(analytic)}};
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotTracePreserving:
    case ErrorKind::NotCompletelyPositive:
    case ErrorKind::NotHermitian:
    case ErrorKind::NotAChannel:
    case ErrorKind::NotPSD:
      return 2;
    case ErrorKind::NumericalFailure:
      return 3;
    case ErrorKind::InvalidDimension:
    case ErrorKind::InvalidParameter:
    case ErrorKind::WrongRank:
    case ErrorKind::NotApplicable:
      return 1;
  }
  return 1;
}

}  // namespace qchan::io
