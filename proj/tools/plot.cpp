#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "harness.hpp"

namespace aoi::cli {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    return used == s.size() ? v : NAN;
  } catch (const std::exception&) {
    return NAN;
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#393b79", "#637939"};

struct Series {
  std::vector<std::pair<double, double>> points;
};

void write_svg(const std::filesystem::path& path, const std::string& x_label, const std::string& y_label,
               const std::map<std::string, Series>& series) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& [name, s] : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.5 * std::max(1e-12, std::abs(ymin)), ymax += 0.5 * std::max(1e-12, std::abs(ymax));
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double W = 820, H = 520, left = 90, right = 250, top = 30, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + i * (xmax - xmin) / 5, yv = ymin + i * (ymax - ymin) / 5;
    out << "<text x=\"" << sx(xv) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << fmt(xv)
        << "</text>\n"
        << "<text x=\"" << left - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n"
        << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\"" << sy(yv) << "\" y2=\"" << sy(yv)
        << "\" stroke=\"#ddd\"/>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << x_label
      << "</text>\n"
      << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << top + ph / 2 << ")\">" << y_label << "</text>\n";

  std::size_t idx = 0;
  for (const auto& [name, s] : series) {
    const char* color = kColors[idx % (sizeof kColors / sizeof kColors[0])];
    const bool dashed = name.find("benchmark") != std::string::npos;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
        << (dashed ? " stroke-dasharray=\"6 3\"" : "") << " points=\"";
    for (const auto& [x, y] : s.points) out << sx(x) << ',' << sy(y) << ' ';
    out << "\"/>\n";
    for (const auto& [x, y] : s.points) {
      out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 14 + 18 * static_cast<double>(idx);
    out << "<line x1=\"" << left + pw + 12 << "\" x2=\"" << left + pw + 36 << "\" y1=\"" << ly << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"6 3\"" : "")
        << "/>\n<text x=\"" << left + pw + 42 << "\" y=\"" << ly + 4 << "\">" << name << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
}

}  // namespace

std::vector<std::filesystem::path> render_plots(const std::filesystem::path& csv_path,
                                                const std::filesystem::path& out_dir, const std::string& x_column) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot read " + csv_path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv " + csv_path.string());
  const auto header = split_csv_line(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("csv has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cx = column(x_column), cprot = column("protocol"), cpol = column("policy"),
                    csol = column("solver"), cbench = column("benchmark");
  const std::vector<std::string> metrics{"peak_aoi_s", "per_packet_aoi_s", "avg_power_w"};
  std::vector<std::size_t> cmetric;
  for (const auto& m : metrics) cmetric.push_back(column(m));

  std::vector<std::map<std::string, Series>> per_metric(metrics.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw std::runtime_error("malformed csv row: " + line);
    const double x = to_double(f[cx]);
    std::string name = f[cprot] + "-" + f[cpol] + " (" + f[csol] + ")";
    if (f[cbench] == "1") name += " benchmark";
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      const double y = to_double(f[cmetric[m]]);
      if (std::isfinite(x) && std::isfinite(y)) per_metric[m][name].points.emplace_back(x, y);
    }
  }

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  const std::string stem = csv_path.stem().string();
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    if (metrics[m] != "avg_power_w") {
      for (auto it = per_metric[m].begin(); it != per_metric[m].end();) {
        it = it->first.find("benchmark") != std::string::npos ? per_metric[m].erase(it) : std::next(it);
      }
    }
    for (auto& [name, s] : per_metric[m]) std::sort(s.points.begin(), s.points.end());
    const auto path = out_dir / (stem + "_" + metrics[m] + ".svg");
    write_svg(path, x_column, metrics[m], per_metric[m]);
    written.push_back(path);
  }
  return written;
}

}  // namespace aoi::cli
