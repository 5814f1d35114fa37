#include "curvnf/sample_io.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "curvnf/error.hpp"

namespace curvnf {

namespace {

using nlohmann::json;

void append_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kFormat, "cannot serialize a non-finite number");
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_list(std::string& out, const std::vector<double>& values) {
  out += '[';
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    append_number(out, values[i]);
  }
  out += ']';
}

std::vector<double> lower_triangle(const Matrix& m) {
  std::vector<double> out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j <= i; ++j) out.push_back(m(i, j));
  return out;
}

[[noreturn]] void format_error(long line_no, const std::string& what) {
  throw Error(ErrorCode::kFormat,
              "line " + std::to_string(line_no) + ": " + what);
}

double number_at(const json& v, long line_no, const char* key) {
  if (!v.is_number()) format_error(line_no, std::string(key) + " must hold numbers");
  return v.get<double>();
}

Matrix parse_triangle(const json& v, int dim, long line_no, const char* key) {
  const size_t expected = static_cast<size_t>(dim * (dim + 1) / 2);
  if (!v.is_array() || v.size() != expected) {
    format_error(line_no, std::string(key) + " must list " +
                              std::to_string(expected) +
                              " lower-triangle entries");
  }
  Matrix m(dim, dim);
  size_t n = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = number_at(v[n++], line_no, key);
  return m;
}

}  // namespace

std::string sample_to_json(const PointSample& s) {
  std::string out = "{\"dim\":" + std::to_string(s.dim) + ",\"g\":";
  append_list(out, lower_triangle(s.g));
  if (s.h) {
    out += ",\"h\":";
    append_list(out, lower_triangle(*s.h));
  }
  if (s.t) {
    out += ",\"T\":";
    append_list(out, std::vector<double>(s.t->data(), s.t->data() + s.t->size()));
  }
  out += ",\"rm\":[";
  for (size_t n = 0; n < s.rm.size(); ++n) {
    const Component& c = s.rm[n];
    if (n) out += ',';
    out += '[' + std::to_string(c.i + 1) + ',' + std::to_string(c.j + 1) + ',' +
           std::to_string(c.k + 1) + ',' + std::to_string(c.l + 1) + ',';
    append_number(out, c.value);
    out += ']';
  }
  out += ']';
  if (s.weight) {
    out += ",\"weight\":";
    append_number(out, *s.weight);
  }
  if (!s.coords.empty()) {
    out += ",\"coords\":";
    append_list(out, s.coords);
  }
  out += '}';
  return out;
}

PointSample sample_from_json(const std::string& line, long line_no) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    format_error(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) format_error(line_no, "expected a JSON object");

  PointSample s;
  const auto dim = doc.find("dim");
  if (dim == doc.end() || !dim->is_number_integer() || dim->get<int>() < 2) {
    format_error(line_no, "dim must be an integer >= 2");
  }
  s.dim = dim->get<int>();
  const auto g = doc.find("g");
  if (g == doc.end()) format_error(line_no, "missing g");
  s.g = parse_triangle(*g, s.dim, line_no, "g");
  if (const auto h = doc.find("h"); h != doc.end() && !h->is_null()) {
    s.h = parse_triangle(*h, s.dim, line_no, "h");
  }
  if (const auto t = doc.find("T"); t != doc.end() && !t->is_null()) {
    if (!t->is_array() || t->size() != static_cast<size_t>(s.dim)) {
      format_error(line_no, "T must have dim entries");
    }
    Vector v(s.dim);
    for (int i = 0; i < s.dim; ++i) v[i] = number_at((*t)[i], line_no, "T");
    s.t = v;
  }
  const auto rm = doc.find("rm");
  if (rm == doc.end() || !rm->is_array()) format_error(line_no, "missing rm list");
  for (const json& entry : *rm) {
    if (!entry.is_array() || entry.size() != 5) {
      format_error(line_no, "rm entries must be [i,j,k,l,value]");
    }
    int idx[4];
    for (int a = 0; a < 4; ++a) {
      if (!entry[a].is_number_integer()) {
        format_error(line_no, "rm indices must be integers");
      }
      idx[a] = entry[a].get<int>();
      if (idx[a] < 1 || idx[a] > s.dim) {
        format_error(line_no, "rm index " + std::to_string(idx[a]) +
                                  " outside 1.." + std::to_string(s.dim));
      }
    }
    s.rm.push_back({idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1,
                    number_at(entry[4], line_no, "rm")});
  }
  if (const auto w = doc.find("weight"); w != doc.end() && !w->is_null()) {
    s.weight = number_at(*w, line_no, "weight");
    if (*s.weight < 0.0) format_error(line_no, "weight must be nonnegative");
  }
  if (const auto c = doc.find("coords"); c != doc.end() && !c->is_null()) {
    if (!c->is_array()) format_error(line_no, "coords must be a list");
    for (const json& v : *c) s.coords.push_back(number_at(v, line_no, "coords"));
  }
  return s;
}

void read_samples(const std::string& path,
                  const std::function<void(PointSample&&)>& sink) {
  // gzread passes uncompressed files through unchanged.
  gzFile file = gzopen(path.c_str(), "rb");
  if (!file) throw Error(ErrorCode::kFormat, "cannot open " + path);
  std::string line;
  long line_no = 0;
  char buf[1 << 16];
  auto flush = [&] {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      sink(sample_from_json(line, line_no));
    }
    line.clear();
  };
  try {
    while (gzgets(file, buf, sizeof buf)) {
      line += buf;
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        flush();
      }
    }
    int err = Z_OK;
    const char* msg = gzerror(file, &err);
    if (err != Z_OK && err != Z_STREAM_END) {
      throw Error(ErrorCode::kFormat, path + ": " + msg);
    }
    if (!line.empty()) flush();
  } catch (...) {
    gzclose(file);
    throw;
  }
  gzclose(file);
}

std::vector<PointSample> read_samples(const std::string& path) {
  std::vector<PointSample> out;
  read_samples(path, [&](PointSample&& s) { out.push_back(std::move(s)); });
  return out;
}

struct SampleWriter::Impl {
  gzFile gz = nullptr;
  std::ofstream file;
  std::ostream* out = nullptr;
};

SampleWriter::SampleWriter(const std::string& path) : impl_(new Impl) {
  if (path == "-") {
    impl_->out = &std::cout;
  } else if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
    impl_->gz = gzopen(path.c_str(), "wb");
    if (!impl_->gz) throw Error(ErrorCode::kFormat, "cannot write " + path);
  } else {
    impl_->file.open(path);
    if (!impl_->file) throw Error(ErrorCode::kFormat, "cannot write " + path);
    impl_->out = &impl_->file;
  }
}

SampleWriter::~SampleWriter() {
  try {
    close();
  } catch (...) {
  }
}

void SampleWriter::write(const PointSample& sample) {
  const std::string line = sample_to_json(sample) + '\n';
  if (impl_->gz) {
    if (gzwrite(impl_->gz, line.data(), static_cast<unsigned>(line.size())) !=
        static_cast<int>(line.size())) {
      throw Error(ErrorCode::kFormat, "gzip write failed");
    }
  } else if (impl_->out) {
    *impl_->out << line;
  } else {
    throw Error(ErrorCode::kFormat, "writer is closed");
  }
}

void SampleWriter::close() {
  if (impl_->gz) {
    const int rc = gzclose(impl_->gz);
    impl_->gz = nullptr;
    if (rc != Z_OK) throw Error(ErrorCode::kFormat, "gzip close failed");
  } else if (impl_->out) {
    impl_->out->flush();
    const bool bad = !*impl_->out;
    if (impl_->file.is_open()) impl_->file.close();
    impl_->out = nullptr;
    if (bad) throw Error(ErrorCode::kFormat, "write failed");
  }
}

void write_samples(const std::string& path,
                   const std::vector<PointSample>& samples) {
  SampleWriter writer(path);
  for (const auto& s : samples) writer.write(s);
  writer.close();
}

}  // namespace curvnf
