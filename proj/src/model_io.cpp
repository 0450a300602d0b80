#include "paddy/model_io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "paddy/error.hpp"
#include "paddy/text.hpp"

namespace paddy {

namespace {

constexpr std::string_view kMagic = "paddy-model";

const Normalizer& find_norm(const ModelArtifact& a, std::string_view name) {
  for (const auto& [n, nz] : a.normalizers)
    if (n == name) return nz;
  fail(ErrorCode::Parse, "model is missing normalizer '" + std::string(name) + "'");
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

// Line-by-line reader that reports positions in its errors.
class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  std::vector<std::string> next(std::string_view expected_key) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      auto t = tokens(line);
      if (t.empty()) continue;
      if (t[0] != expected_key) error("expected '" + std::string(expected_key) + "', found '" + t[0] + "'");
      return t;
    }
    error("unexpected end of file, expected '" + std::string(expected_key) + "'");
  }

  std::vector<std::string> next_any() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      auto t = tokens(line);
      if (!t.empty()) return t;
    }
    error("unexpected end of file");
  }

  void want(const std::vector<std::string>& t, std::size_t n) const {
    if (t.size() != n)
      error("'" + t[0] + "' expects " + std::to_string(n - 1) + " values, got " + std::to_string(t.size() - 1));
  }

  double num(const std::string& s, std::string_view field) const {
    return text::parse_double(s, ctx(field));
  }
  long long integer(const std::string& s, std::string_view field) const {
    return text::parse_int(s, ctx(field));
  }
  std::uint64_t unsigned_integer(const std::string& s, std::string_view field, int base = 10) const {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc{} || ptr != s.data() + s.size()) error(std::string(field) + ": bad unsigned value '" + s + "'");
    return v;
  }

  [[noreturn]] void error(const std::string& msg) const { fail(ErrorCode::Parse, ctx("") + msg); }

 private:
  std::string ctx(std::string_view field) const {
    std::string c = source_ + ":" + std::to_string(line_) + ": ";
    if (!field.empty()) c += std::string(field);
    return c;
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

Matrix read_matrix(Reader& r, std::string_view key) {
  auto head = r.next(key);
  r.want(head, 3);
  const auto rows = r.integer(head[1], "rows");
  const auto cols = r.integer(head[2], "cols");
  if (rows < 1 || cols < 2 || rows > 100000 || cols > 100000) r.error("implausible matrix shape");
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long i = 0; i < rows; ++i) {
    auto w = r.next("w");
    r.want(w, static_cast<std::size_t>(cols) + 1);
    for (long long j = 0; j < cols; ++j) m(i, j) = r.num(w[j + 1], "weight");
  }
  return m;
}

void write_matrix(std::ostream& out, std::string_view key, const Matrix& m) {
  out << key << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << 'w';
    for (double v : m.row(i)) out << ' ' << text::format_double(v);
    out << '\n';
  }
}

}  // namespace

ModelArtifact to_artifact(const Et0Model& m, const Provenance& prov) {
  m.validate();
  return ModelArtifact{kModelFormatVersion, ModelKind::Et0, m.net, 0,
                       {{"tmax", m.norms.tmax}, {"tavg", m.norms.tavg}, {"tmin", m.norms.tmin}, {"et0", m.norms.et0}},
                       prov};
}

ModelArtifact to_artifact(const MoistureModel& m, const Provenance& prov) {
  m.validate();
  return ModelArtifact{kModelFormatVersion, ModelKind::Moisture, m.net, m.lag,
                       {{"et0", m.norms.et0}, {"precip", m.norms.precip}, {"kc", m.norms.kc}, {"theta", m.norms.theta}},
                       prov};
}

Et0Model et0_model_from(const ModelArtifact& a) {
  require(a.kind == ModelKind::Et0, ErrorCode::InvalidArgument, "model file does not hold an ET0 model");
  Et0Model m{a.net, Et0Normalizers{find_norm(a, "tmax"), find_norm(a, "tavg"), find_norm(a, "tmin"),
                                   find_norm(a, "et0")}};
  m.validate();
  return m;
}

MoistureModel moisture_model_from(const ModelArtifact& a) {
  require(a.kind == ModelKind::Moisture, ErrorCode::InvalidArgument, "model file does not hold a moisture model");
  MoistureModel m{a.net, a.lag,
                  MoistureNormalizers{find_norm(a, "et0"), find_norm(a, "precip"), find_norm(a, "kc"),
                                      find_norm(a, "theta")}};
  m.validate();
  return m;
}

void save_model(const ModelArtifact& m, std::ostream& out) {
  const auto& t = m.net.topology();
  out << kMagic << ' ' << m.version << '\n';
  out << "kind " << (m.kind == ModelKind::Et0 ? "et0" : "moisture") << '\n';
  out << "topology " << t.n_inputs << ' ' << t.n_hidden << ' ' << t.n_outputs << '\n';
  if (m.kind == ModelKind::Moisture) out << "lag " << m.lag << '\n';
  out << "gain " << text::format_double(m.net.gain()) << '\n';
  for (const auto& [name, nz] : m.normalizers)
    out << "normalizer " << name << ' ' << text::format_double(nz.lo()) << ' ' << text::format_double(nz.hi())
        << '\n';
  out << "seed " << m.provenance.seed << '\n';
  out << "epochs " << m.provenance.epochs << '\n';
  out << "digest " << hex64(m.provenance.data_digest) << '\n';
  write_matrix(out, "hidden", m.net.hidden_weights());
  write_matrix(out, "output", m.net.output_weights());
  out << "end\n";
}

void save_model(const ModelArtifact& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  save_model(m, out);
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

ModelArtifact load_model(std::istream& in, const std::string& source) {
  Reader r(in, source);
  ModelArtifact a;

  auto head = r.next(kMagic);
  r.want(head, 2);
  a.version = static_cast<int>(r.integer(head[1], "version"));
  if (a.version != kModelFormatVersion)
    fail(ErrorCode::Version, source + ": unsupported model format version " + head[1] + " (supported: " +
                                 std::to_string(kModelFormatVersion) + ")");

  auto kind = r.next("kind");
  r.want(kind, 2);
  if (kind[1] == "et0") a.kind = ModelKind::Et0;
  else if (kind[1] == "moisture") a.kind = ModelKind::Moisture;
  else r.error("unknown model kind '" + kind[1] + "'");

  auto topo = r.next("topology");
  r.want(topo, 4);
  MlpTopology t;
  t.n_inputs = static_cast<std::size_t>(r.integer(topo[1], "n_inputs"));
  t.n_hidden = static_cast<std::size_t>(r.integer(topo[2], "n_hidden"));
  t.n_outputs = static_cast<std::size_t>(r.integer(topo[3], "n_outputs"));

  if (a.kind == ModelKind::Moisture) {
    auto lag = r.next("lag");
    r.want(lag, 2);
    a.lag = static_cast<int>(r.integer(lag[1], "lag"));
  }
  auto gain = r.next("gain");
  r.want(gain, 2);
  const double g = r.num(gain[1], "gain");

  auto line = r.next_any();
  while (line[0] == "normalizer") {
    r.want(line, 4);
    try {
      a.normalizers.emplace_back(line[1], Normalizer(r.num(line[2], "lo"), r.num(line[3], "hi")));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Parse) throw;
      r.error(e.what());
    }
    line = r.next_any();
  }
  if (line[0] != "seed") r.error("expected 'seed', found '" + line[0] + "'");
  r.want(line, 2);
  a.provenance.seed = r.unsigned_integer(line[1], "seed");
  auto epochs = r.next("epochs");
  r.want(epochs, 2);
  a.provenance.epochs = static_cast<int>(r.integer(epochs[1], "epochs"));
  auto digest = r.next("digest");
  r.want(digest, 2);
  a.provenance.data_digest = r.unsigned_integer(digest[1], "digest", 16);

  Matrix hidden = read_matrix(r, "hidden");
  Matrix output = read_matrix(r, "output");
  r.next("end");

  try {
    a.net = Mlp(t, std::move(hidden), std::move(output), g);
  } catch (const Error& e) {
    r.error(std::string("inconsistent model: ") + e.what());
  }
  return a;
}

ModelArtifact load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return load_model(in, path.string());
}

std::uint64_t pattern_digest(std::span<const Pattern> patterns) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& p : patterns) {
    for (double v : p.input) mix(v);
    for (double v : p.target) mix(v);
  }
  return h;
}

}  // namespace paddy
