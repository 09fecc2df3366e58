#include "pendsim/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "pendsim/errors.hpp"

namespace pendsim::io {

namespace {

void append_number(std::string& line, double v) {
  char buf[32];
  // 17 significant digits: doubles round-trip exactly.
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = line.find(sep, begin);
    if (end == std::string::npos) {
      out.push_back(line.substr(begin));
      break;
    }
    out.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const sim::SimLog& log) {
  const bool full = log.kind == sim::ModelKind::Full;
  const int nq = static_cast<int>(log.q.rows());
  const bool has_meas = log.q_meas.size() > 0;
  const bool has_wind = log.wind.size() > 0;

  std::string header = "t";
  for (int i = 0; i < nq; ++i) header += ",q" + std::to_string(i + 1);
  for (int i = 0; i < nq; ++i) header += ",dq" + std::to_string(i + 1);
  header += full ? ",Fx,Fy,tau_z" : ",u";
  if (has_meas) {
    for (int i = 0; i < nq; ++i) header += ",qm" + std::to_string(i + 1);
    for (int i = 0; i < nq; ++i) header += ",dqm" + std::to_string(i + 1);
  }
  if (has_wind) header += ",Fwx,Fwy";
  out << header << '\n';

  std::string line;
  for (std::size_t i = 0; i < log.size(); ++i) {
    line.clear();
    const auto col = static_cast<Eigen::Index>(i);
    append_number(line, log.t[i]);
    for (int r = 0; r < nq; ++r) {
      line += ',';
      append_number(line, log.q(r, col));
    }
    for (int r = 0; r < nq; ++r) {
      line += ',';
      append_number(line, log.dq(r, col));
    }
    for (Eigen::Index r = 0; r < log.u.rows(); ++r) {
      line += ',';
      append_number(line, log.u(r, col));
    }
    if (has_meas) {
      for (int r = 0; r < nq; ++r) {
        line += ',';
        append_number(line, log.q_meas(r, col));
      }
      for (int r = 0; r < nq; ++r) {
        line += ',';
        append_number(line, log.dq_meas(r, col));
      }
    }
    if (has_wind) {
      for (int r = 0; r < 2; ++r) {
        line += ',';
        append_number(line, log.wind(r, col));
      }
    }
    out << line << '\n';
  }
}

void write_csv_file(const std::string& path, const sim::SimLog& log) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw Error("cannot open for writing: " + path);
  write_csv(out, log);
  if (!out.good()) throw Error("write failed: " + path);
}

sim::SimLog read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty CSV");
  const auto names = split(line, ',');
  if (names.empty() || names[0] != "t") {
    throw ParseError(1, "expected header starting with 't'");
  }

  const bool full = std::find(names.begin(), names.end(), "tau_z") != names.end();
  const int nq = full ? 5 : 2;
  const int nu = full ? 3 : 1;
  const bool has_meas =
      std::find(names.begin(), names.end(), "qm1") != names.end();
  const bool has_wind =
      std::find(names.begin(), names.end(), "Fwx") != names.end();
  const std::size_t expected_cols = 1 + 2 * static_cast<std::size_t>(nq) +
                                    static_cast<std::size_t>(nu) +
                                    (has_meas ? 2 * static_cast<std::size_t>(nq) : 0) +
                                    (has_wind ? 2 : 0);
  if (names.size() != expected_cols) {
    throw ParseError(1, "unexpected column count");
  }

  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != expected_cols) {
      throw ParseError(lineno, "unexpected column count");
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto& f = fields[i];
      const auto result =
          std::from_chars(f.data(), f.data() + f.size(), row[i]);
      if (result.ec != std::errc{} || result.ptr != f.data() + f.size()) {
        throw ParseError(lineno, "bad number: " + f);
      }
    }
    rows.push_back(std::move(row));
  }

  sim::SimLog log;
  log.kind = full ? sim::ModelKind::Full : sim::ModelKind::Planar;
  const auto n = static_cast<Eigen::Index>(rows.size());
  log.q.resize(nq, n);
  log.dq.resize(nq, n);
  log.u.resize(nu, n);
  if (has_meas) {
    log.q_meas.resize(nq, n);
    log.dq_meas.resize(nq, n);
  }
  if (has_wind) log.wind.resize(2, n);
  log.t.resize(rows.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    std::size_t k = 0;
    log.t[static_cast<std::size_t>(i)] = row[k++];
    for (int r = 0; r < nq; ++r) log.q(r, i) = row[k++];
    for (int r = 0; r < nq; ++r) log.dq(r, i) = row[k++];
    for (int r = 0; r < nu; ++r) log.u(r, i) = row[k++];
    if (has_meas) {
      for (int r = 0; r < nq; ++r) log.q_meas(r, i) = row[k++];
      for (int r = 0; r < nq; ++r) log.dq_meas(r, i) = row[k++];
    }
    if (has_wind) {
      for (int r = 0; r < 2; ++r) log.wind(r, i) = row[k++];
    }
  }
  log.dt = rows.size() >= 2 ? log.t[1] - log.t[0] : 1e-3;
  return log;
}

sim::SimLog read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  return read_csv(in);
}

}  // namespace pendsim::io
