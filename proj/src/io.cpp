#include "negdep/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "negdep/errors.hpp"

namespace negdep::io {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double parse_double(const std::string& tok, const std::string& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw InputError(path + ": bad numeric token '" + tok + "'");
  }
}

long parse_long(const std::string& tok, const std::string& path) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw InputError(path + ": bad integer token '" + tok + "'");
  }
}

class TokenStream {
 public:
  TokenStream(std::string text, std::string path) : path_(std::move(path)) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) tokens_.push_back(tok);
  }
  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const {
    if (done()) throw InputError(path_ + ": unexpected end of file");
    return tokens_[pos_];
  }
  std::string next() {
    const std::string tok = peek();
    ++pos_;
    return tok;
  }
  void expect(const std::string& word) {
    const std::string tok = next();
    if (tok != word) throw InputError(path_ + ": expected '" + word + "', found '" + tok + "'");
  }
  double next_double() { return parse_double(next(), path_); }
  long next_long() { return parse_long(next(), path_); }
  const std::string& path() const { return path_; }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  std::string path_;
};

std::vector<RectMatrix> read_csv_matrices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(parse_double(cell, path));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path + ": empty CSV matrix");
  const std::size_t cols = rows.front().size();
  std::vector<double> data;
  for (const auto& r : rows) {
    if (r.size() != cols) throw InputError(path + ": ragged CSV rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return {RectMatrix(static_cast<int>(rows.size()), static_cast<int>(cols), std::move(data))};
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<RectMatrix> read_matrix_list(const std::string& path) {
  if (has_suffix(path, ".csv")) return read_csv_matrices(path);
  TokenStream ts(read_file(path), path);
  std::vector<RectMatrix> out;
  long declared = -1;
  if (!ts.done() && ts.peek() == "count") {
    ts.next();
    declared = ts.next_long();
  }
  while (!ts.done()) {
    ts.expect("rows");
    const long r = ts.next_long();
    ts.expect("cols");
    const long c = ts.next_long();
    if (r < 1 || c < 1) throw InputError(path + ": matrix dimensions must be positive");
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(r * c));
    for (long i = 0; i < r * c; ++i) data.push_back(ts.next_double());
    out.emplace_back(static_cast<int>(r), static_cast<int>(c), std::move(data));
  }
  if (out.empty()) throw InputError(path + ": no matrices in file");
  if (declared >= 0 && declared != static_cast<long>(out.size()))
    throw InputError(path + ": count header does not match the number of matrices");
  return out;
}

RectMatrix read_matrix(const std::string& path) {
  auto ms = read_matrix_list(path);
  if (ms.size() != 1) throw InputError(path + ": expected a single matrix");
  return std::move(ms.front());
}

namespace {

void write_one_matrix(std::ostream& os, const RectMatrix& m) {
  os << "rows " << m.rows() << "\n";
  os << "cols " << m.cols() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_double(m(i, j));
    os << "\n";
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write file: " + path);
  return os;
}

}  // namespace

void write_matrix(const std::string& path, const RectMatrix& m) {
  auto os = open_out(path);
  if (has_suffix(path, ".csv")) {
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << format_double(m(i, j));
      os << "\n";
    }
    return;
  }
  write_one_matrix(os, m);
}

void write_matrix_list(const std::string& path, const std::vector<RectMatrix>& ms) {
  if (has_suffix(path, ".csv")) throw InputError("matrix lists require the structured format");
  auto os = open_out(path);
  os << "count " << ms.size() << "\n";
  for (const auto& m : ms) write_one_matrix(os, m);
}

SamplerSpec read_sampler_spec(const std::string& path) {
  TokenStream ts(read_file(path), path);
  ts.expect("scheme");
  const std::string tag = ts.next();

  auto read_vector = [&ts]() {
    std::vector<double> v;
    while (!ts.done()) {
      const std::string& tok = ts.peek();
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) break;
      v.push_back(ts.next_double());
    }
    return v;
  };

  if (tag == "iid") {
    ts.expect("p");
    return IidScheme{read_vector()};
  }
  if (tag == "uniform_k") {
    ts.expect("n");
    const long n = ts.next_long();
    ts.expect("k");
    const long k = ts.next_long();
    return UniformKScheme{static_cast<int>(n), static_cast<int>(k)};
  }
  if (tag == "conditioned_bernoulli") {
    ConditionedBernoulliScheme s;
    while (!ts.done()) {
      const std::string field = ts.next();
      if (field == "k")
        s.k = static_cast<int>(ts.next_long());
      else if (field == "pi")
        s.pi = read_vector();
      else if (field == "max_attempts")
        s.max_attempts = static_cast<std::uint64_t>(ts.next_long());
      else
        throw InputError(path + ": unknown field '" + field + "'");
    }
    return s;
  }
  if (tag == "projection_dpp") {
    ts.expect("dim");
    const long dim = ts.next_long();
    ts.expect("kernel");
    std::vector<double> data;
    for (long i = 0; i < dim * dim; ++i) data.push_back(ts.next_double());
    return ProjectionDppScheme{SymMatrix(static_cast<int>(dim), std::move(data))};
  }
  if (tag == "spanning_tree") {
    ts.expect("vertices");
    const long nv = ts.next_long();
    ts.expect("edges");
    Graph g;
    g.vertices = static_cast<int>(nv);
    while (!ts.done()) {
      const int u = static_cast<int>(ts.next_long());
      const int v = static_cast<int>(ts.next_long());
      g.edges.emplace_back(u, v);
    }
    return SpanningTreeScheme{std::move(g)};
  }
  throw InputError(path + ": unknown scheme '" + tag + "'");
}

void write_sampler_spec(const std::string& path, const SamplerSpec& spec) {
  auto os = open_out(path);
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IidScheme>) {
          os << "scheme iid\np";
          for (double p : s.p) os << " " << format_double(p);
          os << "\n";
        } else if constexpr (std::is_same_v<T, UniformKScheme>) {
          os << "scheme uniform_k\nn " << s.n << "\nk " << s.k << "\n";
        } else if constexpr (std::is_same_v<T, ConditionedBernoulliScheme>) {
          os << "scheme conditioned_bernoulli\nk " << s.k << "\npi";
          for (double p : s.pi) os << " " << format_double(p);
          os << "\nmax_attempts " << s.max_attempts << "\n";
        } else if constexpr (std::is_same_v<T, ProjectionDppScheme>) {
          os << "scheme projection_dpp\ndim " << s.kernel.dim() << "\nkernel\n";
          for (int i = 0; i < s.kernel.dim(); ++i) {
            for (int j = 0; j < s.kernel.dim(); ++j)
              os << (j ? " " : "") << format_double(s.kernel(i, j));
            os << "\n";
          }
        } else {
          os << "scheme spanning_tree\nvertices " << s.graph.vertices << "\nedges\n";
          for (auto [u, v] : s.graph.edges) os << u << " " << v << "\n";
        }
      },
      spec);
}

std::string mask_to_string(Bitmask m, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((m >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

void write_table_csv(const std::string& path, const CubeDistribution& d) {
  auto os = open_out(path);
  os << "bitmask,probability\n";
  for (std::size_t m = 0; m < d.probs().size(); ++m)
    os << mask_to_string(static_cast<Bitmask>(m), d.n()) << "," << format_double(d.prob(m)) << "\n";
}

std::string sha256_file_hex(const std::string& path) {
  const std::string data = read_file(path);
  return sha256_hex(data.data(), data.size());
}

}  // namespace negdep::io
