#include "privlog/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "privlog/time_util.hpp"

namespace privlog {

double jaccard_variants(const EventLog& a, const EventLog& b) {
  std::set<Variant> va = variant_set(a), vb = variant_set(b);
  std::size_t common = 0;
  for (const auto& v : va) common += vb.count(v);
  std::size_t joined = va.size() + vb.size() - common;
  if (joined == 0) return 0.0;
  return 1.0 - static_cast<double>(common) / static_cast<double>(joined);
}

std::vector<DfgArc> build_dfg(const EventLog& log) {
  std::map<std::pair<std::string, std::string>, std::pair<std::int64_t, double>>
      arcs;
  for (const auto& trace : log.traces)
    for (std::size_t i = 1; i < trace.events.size(); ++i) {
      auto& cell = arcs[{trace.events[i - 1].activity, trace.events[i].activity}];
      cell.first += 1;
      cell.second += static_cast<double>(trace.events[i].timestamp -
                                         trace.events[i - 1].timestamp);
    }
  std::vector<DfgArc> out;
  out.reserve(arcs.size());
  for (const auto& [key, cell] : arcs)
    out.push_back({key.first, key.second, cell.first,
                   cell.second / kSecondsPerMonth});
  return out;
}

double emd(std::vector<double> u, std::vector<double> v) {
  if (u.empty() || v.empty())
    throw std::domain_error("earth mover's distance needs non-empty inputs");
  std::sort(u.begin(), u.end());
  std::sort(v.begin(), v.end());
  // Integrate |F_u - F_v| over the merged support; each point carries mass
  // 1/n on its own side.
  double distance = 0.0;
  double cdf_u = 0.0, cdf_v = 0.0;
  double step_u = 1.0 / static_cast<double>(u.size());
  double step_v = 1.0 / static_cast<double>(v.size());
  std::size_t i = 0, j = 0;
  double prev = std::min(u.front(), v.front());
  while (i < u.size() || j < v.size()) {
    double x = i < u.size() && (j >= v.size() || u[i] <= v[j]) ? u[i] : v[j];
    distance += std::abs(cdf_u - cdf_v) * (x - prev);
    prev = x;
    while (i < u.size() && u[i] == x) { cdf_u += step_u; ++i; }
    while (j < v.size() && v[j] == x) { cdf_v += step_v; ++j; }
  }
  return distance;
}

MetricsReport evaluate(const EventLog& original, const EventLog& released) {
  MetricsReport report;
  std::set<Variant> vo = variant_set(original), vr = variant_set(released);
  report.original_variants = vo.size();
  report.released_variants = vr.size();
  for (const auto& v : vo) report.missing_variants += vr.count(v) ? 0 : 1;
  for (const auto& v : vr) report.added_variants += vo.count(v) ? 0 : 1;
  report.jaccard = jaccard_variants(original, released);

  auto da = build_dfg(original);
  auto db = build_dfg(released);
  std::map<std::pair<std::string, std::string>, std::pair<double, double>> wa,
      wb;
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& arc : da) {
    wa[{arc.from, arc.to}] = {static_cast<double>(arc.frequency),
                              arc.total_months};
    keys.insert({arc.from, arc.to});
  }
  for (const auto& arc : db) {
    wb[{arc.from, arc.to}] = {static_cast<double>(arc.frequency),
                              arc.total_months};
    keys.insert({arc.from, arc.to});
  }
  if (!keys.empty()) {
    std::vector<double> fa, fb, ta, tb;
    for (const auto& key : keys) {
      auto ia = wa.find(key);
      auto ib = wb.find(key);
      fa.push_back(ia == wa.end() ? 0.0 : ia->second.first);
      ta.push_back(ia == wa.end() ? 0.0 : ia->second.second);
      fb.push_back(ib == wb.end() ? 0.0 : ib->second.first);
      tb.push_back(ib == wb.end() ? 0.0 : ib->second.second);
    }
    report.emd_frequency = emd(fa, fb);
    report.emd_time_months = emd(ta, tb);
  }
  return report;
}

namespace {
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}
}  // namespace

std::string to_json(const MetricsReport& r) {
  std::string out = "{\n";
  out += "  \"jaccard\": " + num(r.jaccard) + ",\n";
  out += "  \"emd_frequency\": " + num(r.emd_frequency) + ",\n";
  out += "  \"emd_time_months\": " + num(r.emd_time_months) + ",\n";
  out += "  \"original_variants\": " + std::to_string(r.original_variants) + ",\n";
  out += "  \"released_variants\": " + std::to_string(r.released_variants) + ",\n";
  out += "  \"missing_variants\": " + std::to_string(r.missing_variants) + ",\n";
  out += "  \"added_variants\": " + std::to_string(r.added_variants) + "\n";
  out += "}";
  return out;
}

std::string csv_header() {
  return "label,jaccard,emd_frequency,emd_time_months,original_variants,"
         "released_variants,missing_variants,added_variants";
}

std::string to_csv_row(const MetricsReport& r, std::string_view label) {
  std::string out(label);
  out += "," + num(r.jaccard) + "," + num(r.emd_frequency) + "," +
         num(r.emd_time_months) + "," + std::to_string(r.original_variants) +
         "," + std::to_string(r.released_variants) + "," +
         std::to_string(r.missing_variants) + "," +
         std::to_string(r.added_variants);
  return out;
}

}  // namespace privlog
