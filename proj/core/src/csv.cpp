#include "critwave/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace critwave {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& file, const Trajectory& traj) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
  out << "t,L2,H1dot,Linf,Hneg\n";
  for (const auto& s : traj.samples) {
    out << fmt(s.t) << ',' << fmt(s.l2) << ',' << fmt(s.h1dot) << ','
        << fmt(s.linf) << ',' << fmt(s.hneg) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::vector<TrajectorySample> read_trajectory_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + file.string());
  if (line != "t,L2,H1dot,Linf,Hneg")
    throw std::runtime_error("unexpected csv header in " + file.string());

  std::vector<TrajectorySample> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    TrajectorySample s{};
    char comma;
    if (!(ss >> s.t >> comma >> s.l2 >> comma >> s.h1dot >> comma >> s.linf >>
          comma >> s.hneg))
      throw std::runtime_error("malformed csv row in " + file.string() + ": " + line);
    rows.push_back(s);
  }
  return rows;
}

}  // namespace critwave
