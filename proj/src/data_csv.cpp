#include "acclab/data_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace acclab {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(std::string_view field, const std::string& path,
                    std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size() ||
      !std::isfinite(v)) {
    throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                ": expected a finite number, got \"" +
                                std::string(field) + "\"");
  }
  return v;
}

// Strips one trailing carriage return so CRLF files parse.
std::string_view chomp(const std::string& line) {
  std::string_view v = line;
  if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
  return v;
}

}  // namespace

TwoSampleData read_two_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument(path + ": empty file (header row required)");
  }
  const std::vector<std::string_view> header = split_fields(chomp(line));
  if (header.size() < 2 || header.back() != "label") {
    throw std::invalid_argument(
        path + ": header must be f0,...,f{d-1},label");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (header[j] != "f" + std::to_string(j)) {
      throw std::invalid_argument(path + ": feature column " +
                                  std::to_string(j) + " must be named f" +
                                  std::to_string(j) + ", got \"" +
                                  std::string(header[j]) + "\"");
    }
  }

  std::vector<double> rows0, rows1;
  std::size_t line_no = 1;
  std::vector<double> row(d);
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = chomp(line);
    if (body.empty()) continue;
    const std::vector<std::string_view> fields = split_fields(body);
    if (fields.size() != d + 1) {
      throw std::invalid_argument(
          path + ":" + std::to_string(line_no) + ": expected " +
          std::to_string(d + 1) + " columns, got " +
          std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = parse_double(fields[j], path, line_no);
    }
    const std::string_view label = fields[d];
    std::vector<double>* dest = nullptr;
    if (label == "0") {
      dest = &rows0;
    } else if (label == "1") {
      dest = &rows1;
    } else {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": label must be 0 or 1, got \"" +
                                  std::string(label) + "\"");
    }
    dest->insert(dest->end(), row.begin(), row.end());
  }

  TwoSampleData data;
  data.x.rows = rows0.size() / d;
  data.x.cols = d;
  data.x.data = std::move(rows0);
  data.y.rows = rows1.size() / d;
  data.y.cols = d;
  data.y.data = std::move(rows1);
  if (data.x.rows == 0 || data.y.rows == 0) {
    throw std::invalid_argument(path + ": both labels 0 and 1 need >= 1 row");
  }
  if (data.x.rows != data.y.rows) {
    throw std::invalid_argument(
        path + ": classes must have equal sizes, got " +
        std::to_string(data.x.rows) + " vs " + std::to_string(data.y.rows));
  }
  return data;
}

void write_two_sample_csv(const std::string& path, const TwoSampleData& data) {
  validate_two_sample(data);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const std::size_t d = data.x.cols;
  for (std::size_t j = 0; j < d; ++j) out << 'f' << j << ',';
  out << "label\n";
  const auto write_rows = [&](const Matrix& m, char label) {
    for (std::size_t i = 0; i < m.rows; ++i) {
      const double* row = m.row(i);
      for (std::size_t j = 0; j < d; ++j) {
        out << format_double(row[j]) << ',';
      }
      out << label << '\n';
    }
  };
  write_rows(data.x, '0');
  write_rows(data.y, '1');
  if (!out.good()) throw std::runtime_error("write failed for " + path);
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = chomp(line);
    if (body.empty()) continue;
    const std::vector<std::string_view> fields = split_fields(body);
    if (cols == 0) {
      cols = fields.size();
    } else if (fields.size() != cols) {
      throw std::invalid_argument(
          path + ":" + std::to_string(line_no) + ": ragged row (expected " +
          std::to_string(cols) + " columns, got " +
          std::to_string(fields.size()) + ")");
    }
    for (const std::string_view f : fields) {
      values.push_back(parse_double(f, path, line_no));
    }
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument(path + ": empty matrix");
  Matrix m;
  m.rows = rows;
  m.cols = cols;
  m.data = std::move(values);
  return m;
}

}  // namespace acclab
