#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ssgs/instance.hpp"

namespace ssgs {

ParseError::ParseError(int line, const std::string& field, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", " + field + ": " + what),
      line_(line),
      field_(field) {}

namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string s;
  int number = 0;
  while (std::getline(in, s)) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    lines.push_back({++number, s});
  }
  return lines;
}

std::vector<long long> integers(const Line& line, const std::string& field) {
  std::istringstream in(line.text);
  std::vector<long long> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw ParseError(line.number, field, "expected integer, got '" + token + "'");
    values.push_back(v);
  }
  return values;
}

int to_int(long long v, const Line& line, const std::string& field) {
  if (v < INT32_MIN || v > INT32_MAX) throw ParseError(line.number, field, "value out of range");
  return static_cast<int>(v);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

// Value after the first ':' on a header line.
std::optional<long long> header_value(const Line& line) {
  const auto colon = line.text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::istringstream in(line.text.substr(colon + 1));
  long long v;
  if (!(in >> v)) return std::nullopt;
  return v;
}

// Builds the instance, reporting invariant failures against the given lines.
Instance checked_instance(std::vector<int> capacities, std::vector<Job> jobs,
                          const std::vector<int>& job_lines, int precedence_line) {
  for (std::size_t r = 0; r < capacities.size(); ++r) {
    if (capacities[r] < 1) {
      throw ParseError(precedence_line, "capacity " + std::to_string(r + 1), "capacity must be positive");
    }
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (jobs[j].duration < 1) {
      throw ParseError(job_lines[j], "duration", "duration must be at least 1");
    }
    for (std::size_t r = 0; r < capacities.size(); ++r) {
      if (jobs[j].demands[r] < 0) {
        throw ParseError(job_lines[j], "demand R " + std::to_string(r + 1), "negative demand");
      }
      if (jobs[j].demands[r] > capacities[r]) {
        throw ParseError(job_lines[j], "demand R " + std::to_string(r + 1),
                         "demand exceeds capacity (" + std::to_string(jobs[j].demands[r]) + " > " +
                             std::to_string(capacities[r]) + ")");
      }
    }
  }
  try {
    return Instance(std::move(capacities), std::move(jobs));
  } catch (const InstanceError& e) {
    throw ParseError(precedence_line, "precedence", e.what());
  }
}

}  // namespace

Instance parse_psplib(const std::string& text) {
  const std::vector<Line> lines = split_lines(text);
  const int count = static_cast<int>(lines.size());

  int declared_jobs = -1;
  int renewable = -1;
  int precedence_at = -1;
  int requests_at = -1;
  int availability_at = -1;
  for (int i = 0; i < count; ++i) {
    const std::string_view s = trim_left(lines[i].text);
    if (starts_with(s, "jobs (incl. supersource/sink")) {
      const auto v = header_value(lines[i]);
      if (!v || *v < 1) throw ParseError(lines[i].number, "jobs", "malformed job count");
      declared_jobs = static_cast<int>(*v);
    } else if (starts_with(s, "- renewable")) {
      const auto v = header_value(lines[i]);
      if (!v || *v < 0) throw ParseError(lines[i].number, "renewable", "malformed resource count");
      renewable = static_cast<int>(*v);
    } else if (starts_with(s, "PRECEDENCE RELATIONS")) {
      precedence_at = i;
    } else if (starts_with(s, "REQUESTS/DURATIONS")) {
      requests_at = i;
    } else if (starts_with(s, "RESOURCEAVAILABILITIES")) {
      availability_at = i;
    }
  }
  const int last_line = count > 0 ? lines.back().number : 0;
  if (declared_jobs < 0) throw ParseError(last_line, "jobs", "missing 'jobs (incl. supersource/sink)' header");
  if (renewable < 0) throw ParseError(last_line, "renewable", "missing renewable resource count");
  if (precedence_at < 0) throw ParseError(last_line, "PRECEDENCE RELATIONS", "missing section");
  if (requests_at < 0) throw ParseError(last_line, "REQUESTS/DURATIONS", "missing section");
  if (availability_at < 0) throw ParseError(last_line, "RESOURCEAVAILABILITIES", "missing section");

  auto is_rule = [](const std::string& s) {
    const std::string_view t = trim_left(s);
    return t.empty() || t.front() == '*' || t.front() == '-';
  };
  // Data rows of a section: lines that start with an integer, up to the next rule.
  auto section_rows = [&](int header) {
    std::vector<const Line*> rows;
    for (int i = header + 1; i < count; ++i) {
      const std::string_view t = trim_left(lines[i].text);
      if (t.empty()) continue;
      if (t.front() == '*') break;
      if (is_rule(lines[i].text) || !(t.front() >= '0' && t.front() <= '9')) {
        if (!rows.empty()) break;
        continue;
      }
      rows.push_back(&lines[i]);
    }
    return rows;
  };

  const auto precedence_rows = section_rows(precedence_at);
  const auto request_rows = section_rows(requests_at);
  if (static_cast<int>(precedence_rows.size()) != declared_jobs) {
    const int at = precedence_rows.empty() ? lines[precedence_at].number : precedence_rows.back()->number;
    throw ParseError(at, "jobs", "job count mismatch: header declares " + std::to_string(declared_jobs) +
                                     ", precedence section lists " + std::to_string(precedence_rows.size()));
  }
  if (static_cast<int>(request_rows.size()) != declared_jobs) {
    const int at = request_rows.empty() ? lines[requests_at].number : request_rows.back()->number;
    throw ParseError(at, "jobs", "job count mismatch: header declares " + std::to_string(declared_jobs) +
                                     ", requests section lists " + std::to_string(request_rows.size()));
  }

  std::vector<std::vector<int>> successors(declared_jobs);
  for (int j = 0; j < declared_jobs; ++j) {
    const Line& line = *precedence_rows[j];
    const auto v = integers(line, "precedence");
    if (v.size() < 3) throw ParseError(line.number, "precedence", "expected jobnr, #modes, #successors");
    if (v[0] != j + 1) throw ParseError(line.number, "jobnr", "expected job " + std::to_string(j + 1));
    if (v[1] != 1) throw ParseError(line.number, "#modes", "only single-mode instances are supported");
    if (v[2] < 0 || static_cast<long long>(v.size()) != 3 + v[2]) {
      throw ParseError(line.number, "#successors", "successor count does not match the listed successors");
    }
    for (std::size_t k = 3; k < v.size(); ++k) {
      if (v[k] < 1 || v[k] > declared_jobs) {
        throw ParseError(line.number, "successors", "successor " + std::to_string(v[k]) + " does not exist");
      }
      successors[j].push_back(static_cast<int>(v[k]) - 1);
    }
  }

  std::vector<int> durations(declared_jobs);
  std::vector<std::vector<int>> demands(declared_jobs);
  for (int j = 0; j < declared_jobs; ++j) {
    const Line& line = *request_rows[j];
    const auto v = integers(line, "requests");
    if (static_cast<int>(v.size()) < 3 + renewable) {
      throw ParseError(line.number, "requests", "expected jobnr, mode, duration and " +
                                                    std::to_string(renewable) + " resource requests");
    }
    if (v[0] != j + 1) throw ParseError(line.number, "jobnr", "expected job " + std::to_string(j + 1));
    durations[j] = to_int(v[2], line, "duration");
    for (int r = 0; r < renewable; ++r) {
      demands[j].push_back(to_int(v[3 + r], line, "demand R " + std::to_string(r + 1)));
    }
  }

  std::vector<int> capacities;
  {
    int i = availability_at + 1;
    // Skip the "R 1 R 2 ..." label row.
    while (i < count && (trim_left(lines[i].text).empty() || trim_left(lines[i].text).front() == 'R' ||
                         trim_left(lines[i].text).front() == 'N' || trim_left(lines[i].text).front() == 'D')) {
      ++i;
    }
    if (i >= count) throw ParseError(last_line, "RESOURCEAVAILABILITIES", "missing capacity row");
    const auto v = integers(lines[i], "capacity");
    if (static_cast<int>(v.size()) < renewable) {
      throw ParseError(lines[i].number, "capacity", "expected " + std::to_string(renewable) + " capacities");
    }
    for (int r = 0; r < renewable; ++r) {
      capacities.push_back(to_int(v[r], lines[i], "capacity R " + std::to_string(r + 1)));
    }
  }

  auto is_dummy = [&](int j) {
    if (durations[j] != 0) return false;
    for (int d : demands[j]) {
      if (d != 0) return false;
    }
    return true;
  };
  const int first = (declared_jobs > 1 && is_dummy(0)) ? 1 : 0;
  const int last = (declared_jobs - 1 > first && is_dummy(declared_jobs - 1)) ? declared_jobs - 1 : declared_jobs;
  std::vector<Job> jobs(last - first);
  std::vector<int> job_lines(last - first);
  for (int j = first; j < last; ++j) {
    Job& job = jobs[j - first];
    job.duration = durations[j];
    job.demands = demands[j];
    job_lines[j - first] = request_rows[j]->number;
  }
  for (int j = first; j < last; ++j) {
    for (int s : successors[j]) {
      if (s >= first && s < last) jobs[s - first].predecessors.push_back(j - first);
    }
  }
  return checked_instance(std::move(capacities), std::move(jobs), job_lines,
                          lines[precedence_at].number);
}

std::string write_native(const Instance& instance) {
  std::ostringstream out;
  out << instance.num_jobs() << ' ' << instance.num_resources() << '\n';
  for (int r = 0; r < instance.num_resources(); ++r) {
    out << (r ? " " : "") << instance.capacity(r);
  }
  out << '\n';
  for (const Job& job : instance.jobs()) {
    out << job.duration << ' ' << job.predecessors.size();
    for (int p : job.predecessors) out << ' ' << p;
    int consumed = 0;
    for (int v : job.demands) consumed += v > 0;
    out << ' ' << consumed;
    for (int r = 0; r < instance.num_resources(); ++r) {
      if (job.demands[r] > 0) out << ' ' << r << ' ' << job.demands[r];
    }
    out << '\n';
  }
  return out.str();
}

Instance parse_native(const std::string& text) {
  std::vector<Line> lines;
  for (Line& line : split_lines(text)) {
    if (const auto hash = line.text.find('#'); hash != std::string::npos) line.text.erase(hash);
    if (!trim_left(line.text).empty()) lines.push_back(std::move(line));
  }
  if (lines.empty()) throw ParseError(0, "header", "missing header line");

  const auto header = integers(lines[0], "header");
  if (header.size() != 2 || header[0] < 0 || header[1] < 0) {
    throw ParseError(lines[0].number, "header", "expected '<jobs> <resources>'");
  }
  const int n = to_int(header[0], lines[0], "jobs");
  const int R = to_int(header[1], lines[0], "resources");
  // An instance without resources has an empty (hence dropped) capacity line.
  const int first_job = R > 0 ? 2 : 1;
  std::vector<int> capacities;
  if (R > 0) {
    if (lines.size() < 2) throw ParseError(lines[0].number, "capacities", "missing capacity line");
    const auto caps = integers(lines[1], "capacities");
    if (static_cast<int>(caps.size()) != R) {
      throw ParseError(lines[1].number, "capacities", "expected " + std::to_string(R) + " capacities");
    }
    for (long long c : caps) capacities.push_back(to_int(c, lines[1], "capacities"));
  }

  if (static_cast<int>(lines.size()) - first_job != n) {
    throw ParseError(lines.back().number, "jobs",
                     "job count mismatch: header declares " + std::to_string(n) + ", file lists " +
                         std::to_string(static_cast<int>(lines.size()) - first_job));
  }
  std::vector<Job> jobs(n);
  std::vector<int> job_lines(n);
  for (int j = 0; j < n; ++j) {
    const Line& line = lines[first_job + j];
    job_lines[j] = line.number;
    const auto v = integers(line, "job");
    std::size_t at = 0;
    auto next = [&](const std::string& field) {
      if (at >= v.size()) throw ParseError(line.number, field, "unexpected end of line");
      return to_int(v[at++], line, field);
    };
    Job& job = jobs[j];
    job.duration = next("duration");
    const int k_pred = next("k_pred");
    if (k_pred < 0) throw ParseError(line.number, "k_pred", "negative count");
    for (int k = 0; k < k_pred; ++k) job.predecessors.push_back(next("pred"));
    const int k_res = next("k_res");
    if (k_res < 0 || k_res > R) throw ParseError(line.number, "k_res", "count out of range");
    job.demands.assign(R, 0);
    for (int k = 0; k < k_res; ++k) {
      const int r = next("resource");
      const int amount = next("demand");
      if (r < 0 || r >= R) throw ParseError(line.number, "resource", "resource " + std::to_string(r) + " does not exist");
      if (job.demands[r] != 0) throw ParseError(line.number, "resource", "resource listed twice");
      if (amount < 1) throw ParseError(line.number, "demand", "listed demands must be positive");
      job.demands[r] = amount;
    }
    if (at != v.size()) throw ParseError(line.number, "job", "trailing tokens");
  }
  return checked_instance(std::move(capacities), std::move(jobs), job_lines, lines[0].number);
}

Instance parse_instance(const std::string& text) {
  const std::string_view s = trim_left(text);
  if (!s.empty() && s.front() == '*') return parse_psplib(text);
  return parse_native(text);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

}  // namespace ssgs
