/*
Copyright 2026 The procmap Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "bench_report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace procmap::tools {

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) return "nan";
  return std::string(buffer, end);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in CSV line");
  return fields;
}

std::string_view run_csv_header() {
  return "instance,hierarchy,distance,eps,strategy,preset,threads,seed,J,edge_cut,max_imbalance,wall_time_ms,error";
}

std::string to_csv(const RunRecord& r) {
  std::string out;
  out += csv_escape(r.instance) + ',' + csv_escape(r.hierarchy) + ',' + csv_escape(r.distance) + ',';
  out += csv_escape(r.eps) + ',' + csv_escape(r.strategy) + ',' + csv_escape(r.preset) + ',';
  out += std::to_string(r.threads) + ',' + std::to_string(r.seed) + ',';
  if (r.error.empty()) {
    out += std::to_string(r.comm_cost) + ',' + std::to_string(r.edge_cut) + ',' + format_number(r.max_imbalance) +
           ',' + format_number(r.wall_time_ms) + ',';
  } else {
    out += ",,,," + csv_escape(r.error);
  }
  return out;
}

double geometric_mean(const std::vector<double>& values) {
  if (values.empty()) return 0;
  double log_sum = 0;
  for (const double v : values) {
    if (!(v > 0)) throw std::invalid_argument("geometric mean needs positive values");
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::string configuration_name(std::string_view strategy, std::string_view preset, int threads) {
  return std::string(strategy) + '-' + std::string(preset) + '-' + std::to_string(threads);
}

std::vector<AggregateRecord> aggregate(const std::vector<RunRecord>& runs, std::string_view baseline) {
  using Key = std::tuple<std::string, std::string, std::string, std::string, std::string, std::string, int>;
  struct Group {
    AggregateRecord record;
    std::vector<double> times;
    double cost_sum = 0;
  };
  std::map<Key, std::size_t> index;
  std::vector<Group> groups;
  for (const auto& r : runs) {
    const Key key{r.instance, r.hierarchy, r.distance, r.eps, r.strategy, r.preset, r.threads};
    auto [it, fresh] = index.emplace(key, groups.size());
    if (fresh) {
      Group g;
      g.record = {r.instance, r.hierarchy, r.distance, r.eps, r.strategy, r.preset, r.threads};
      groups.push_back(std::move(g));
    }
    auto& g = groups[it->second];
    ++g.record.runs;
    if (!r.error.empty()) {
      ++g.record.failures;
      continue;
    }
    g.times.push_back(r.wall_time_ms);
    g.cost_sum += static_cast<double>(r.comm_cost);
  }
  std::map<std::tuple<std::string, std::string, std::string, std::string>, double> baseline_time;
  for (auto& g : groups) {
    auto& rec = g.record;
    const auto ok = g.times.size();
    rec.geomean_time_ms = geometric_mean(g.times);
    rec.mean_comm_cost = ok ? g.cost_sum / static_cast<double>(ok) : 0;
    if (ok && configuration_name(rec.strategy, rec.preset, rec.threads) == baseline) {
      baseline_time[{rec.instance, rec.hierarchy, rec.distance, rec.eps}] = rec.geomean_time_ms;
    }
  }
  std::vector<AggregateRecord> out;
  out.reserve(groups.size());
  for (auto& g : groups) {
    auto& rec = g.record;
    const auto it = baseline_time.find({rec.instance, rec.hierarchy, rec.distance, rec.eps});
    if (it != baseline_time.end() && rec.geomean_time_ms > 0) rec.speedup = it->second / rec.geomean_time_ms;
    out.push_back(rec);
  }
  return out;
}

std::string_view aggregate_csv_header() {
  return "instance,hierarchy,distance,eps,strategy,preset,threads,runs,failures,geomean_time_ms,mean_J,speedup";
}

std::string to_csv(const AggregateRecord& r) {
  std::string out;
  out += csv_escape(r.instance) + ',' + csv_escape(r.hierarchy) + ',' + csv_escape(r.distance) + ',';
  out += csv_escape(r.eps) + ',' + csv_escape(r.strategy) + ',' + csv_escape(r.preset) + ',';
  out += std::to_string(r.threads) + ',' + std::to_string(r.runs) + ',' + std::to_string(r.failures) + ',';
  out += format_number(r.geomean_time_ms) + ',' + format_number(r.mean_comm_cost) + ',';
  out += r.speedup > 0 ? format_number(r.speedup) : std::string();
  return out;
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

void write_profile_svg(std::ostream& out, const std::vector<std::string>& algorithms,
                       const std::vector<double>& taus, const std::vector<std::vector<double>>& fractions) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 160, kTop = 20, kBottom = 50;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double tau_min = taus.empty() ? 1.0 : taus.front();
  const double tau_max = taus.empty() ? 2.0 : std::max(taus.back(), tau_min + 1e-9);
  const auto x_of = [&](double tau) { return kLeft + (tau - tau_min) / (tau_max - tau_min) * plot_w; };
  const auto y_of = [&](double f) { return kTop + (1.0 - f) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double f = i / 4.0;
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y_of(f) + 4 << "\" text-anchor=\"end\">" << format_number(f)
        << "</text>\n";
    const double tau = tau_min + (tau_max - tau_min) * f;
    out << "<text x=\"" << x_of(tau) << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">"
        << format_number(std::round(tau * 100) / 100) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">tau</text>\n";
  out << "<text x=\"15\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 15," << kTop + plot_h / 2
      << ")\" text-anchor=\"middle\">fraction of instances</text>\n";
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    const char* color = kColors[a % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t t = 0; t < taus.size(); ++t) {
      if (t > 0) out << x_of(taus[t]) << ',' << y_of(fractions[a][t - 1]) << ' ';
      out << x_of(taus[t]) << ',' << y_of(fractions[a][t]) << ' ';
    }
    out << "\"/>\n";
    const double ly = kTop + 16 + 18.0 * static_cast<double>(a);
    out << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kWidth - kRight + 32
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly << "\">" << xml_escape(algorithms[a])
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace procmap::tools
