#include "shift2d/atlas.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "shift2d/errors.hpp"
#include "shift2d/numfmt.hpp"

namespace shift2d {

namespace {

void check_params(const AtlasParams& p) {
  if (p.nx < 2 || p.ny < 2) fail(ErrorCode::InvalidArgument, "atlas grid sizes must be >= 2");
  if (!(p.a > 0.0 && p.a < 1.0)) fail(ErrorCode::InvalidArgument, "atlas parameter a must lie in (0,1)");
  if (!(0.0 <= p.xmin && p.xmin < p.xmax && p.xmax <= 1.0 && 0.0 <= p.ymin && p.ymin < p.ymax && p.ymax <= 1.0))
    fail(ErrorCode::InvalidArgument, "atlas window must be a non-empty rectangle inside [0,1]^2");
}

double grid_x(const AtlasParams& p, int i) { return p.xmin + (p.xmax - p.xmin) * i / (p.nx - 1); }
double grid_y(const AtlasParams& p, int j) { return p.ymin + (p.ymax - p.ymin) * j / (p.ny - 1); }

const char* label_color(Label l) {
  switch (l) {
    case Label::Subnormal: return "#3b6fb6";
    case Label::HypoNotSub: return "#7fb3e0";
    case Label::ShAndWhNotH: return "#5aa469";
    case Label::ShNotWh: return "#e0c341";
    case Label::WhNotSh: return "#e08a3c";
    case Label::Neither: return "#c8453c";
    case Label::Out: return "#dddddd";
  }
  return "#000000";
}

std::string coord(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<AtlasRow> run_atlas(const AtlasParams& params) {
  check_params(params);
  const size_t total = static_cast<size_t>(params.nx) * params.ny;
  std::vector<AtlasRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<size_t> next{0};

  auto work = [&] {
    for (size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const int i = static_cast<int>(idx / params.ny);
      const int j = static_cast<int>(idx % params.ny);
      AtlasRow& row = rows[idx];
      row.a = params.a;
      row.x = grid_x(params, i);
      row.y = grid_y(params, j);
      row.method = params.method;
      if (!in_class(row.a, row.x, row.y)) {
        row.label = Label::Out;
        row.margin_sub = row.margin_hypo = row.margin_sh = row.margin_wh = std::nan("");
        continue;
      }
      try {
        const RegionLabel r = classify({row.a, row.x, row.y}, params.method, params.tol);
        row.label = r.label;
        row.margin_sub = r.margin_sub;
        row.margin_hypo = r.margin_hypo;
        row.margin_sh = r.margin_sh;
        row.margin_wh = r.margin_wh;
        row.boundary = r.boundary;
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  };

  int threads = params.threads > 0 ? params.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, 64);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string atlas_csv(const std::vector<AtlasRow>& rows) {
  std::string out = kAtlasHeader;
  out += '\n';
  for (const AtlasRow& r : rows) {
    out += format_double(r.a);
    out += ',';
    out += format_double(r.x);
    out += ',';
    out += format_double(r.y);
    out += ',';
    out += label_name(r.label);
    for (double m : {r.margin_sub, r.margin_hypo, r.margin_sh, r.margin_wh}) {
      out += ',';
      out += format_double(m);
    }
    out += r.boundary ? ",1," : ",0,";
    out += method_name(r.method);
    out += '\n';
  }
  return out;
}

std::string atlas_svg(const AtlasParams& p, const std::vector<AtlasRow>& rows) {
  const double cell = std::max(2.0, 600.0 / std::max(p.nx, p.ny));
  const double width = cell * p.nx, height = cell * p.ny;
  const double legend_w = 190.0;
  auto px = [&](double x) { return (x - p.xmin) / (p.xmax - p.xmin) * (width - cell) + cell / 2; };
  auto py = [&](double y) { return height - ((y - p.ymin) / (p.ymax - p.ymin) * (height - cell) + cell / 2); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(width + legend_w) << "\" height=\""
     << coord(height) << "\" shape-rendering=\"crispEdges\">\n";
  for (const AtlasRow& r : rows) {
    os << "<rect x=\"" << coord(px(r.x) - cell / 2) << "\" y=\"" << coord(py(r.y) - cell / 2)
       << "\" width=\"" << coord(cell) << "\" height=\"" << coord(cell) << "\" fill=\""
       << label_color(r.label) << "\"/>\n";
  }

  struct Curve {
    const char* name;
    const char* color;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Curve> curves = {{"hyponormal bound", "#000000", {}},
                               {"subnormal bound", "#ffffff", {}},
                               {"semi-hyponormal boundary", "#6a2c91", {}},
                               {"weakly hyponormal bound", "#8b0000", {}}};
  const int samples = std::max(p.nx, 200);
  for (int i = 0; i < samples; ++i) {
    const double x = p.xmin + (p.xmax - p.xmin) * i / (samples - 1);
    const double cap = std::min(1.0, x / p.a);
    const double vals[2] = {hypo_bound(p.a, x), sub_bound(p.a, x)};
    for (int c = 0; c < 2; ++c)
      if (vals[c] >= p.ymin && vals[c] <= std::min(p.ymax, cap)) curves[c].pts.emplace_back(x, vals[c]);
    const double w = weakhypo_bound(p.a, x);
    if (w >= p.ymin && w <= std::min(p.ymax, cap)) curves[3].pts.emplace_back(x, w);
    // First sign change of the semi-hyponormality margin going up the column.
    const int steps = 400;
    double prev_y = p.ymin;
    double prev_m = in_class(p.a, x, prev_y) ? is_semihypo_cf({p.a, x, prev_y}).margin : std::nan("");
    for (int s = 1; s <= steps; ++s) {
      const double y = p.ymin + (std::min(p.ymax, cap) - p.ymin) * s / steps;
      if (!in_class(p.a, x, y)) break;
      const double m = is_semihypo_cf({p.a, x, y}).margin;
      if (std::isfinite(prev_m) && (prev_m >= 0) != (m >= 0)) {
        double lo = prev_y, hi = y;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          ((is_semihypo_cf({p.a, x, mid}).margin >= 0) == (prev_m >= 0) ? lo : hi) = mid;
        }
        curves[2].pts.emplace_back(x, 0.5 * (lo + hi));
        break;
      }
      prev_y = y;
      prev_m = m;
    }
  }
  for (const Curve& c : curves) {
    if (c.pts.size() < 2) continue;
    os << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : c.pts) os << coord(px(x)) << "," << coord(py(y)) << " ";
    os << "\"><title>" << c.name << "</title></polyline>\n";
  }

  double ly = 20.0;
  for (Label l : {Label::Subnormal, Label::HypoNotSub, Label::ShAndWhNotH, Label::ShNotWh, Label::WhNotSh,
                  Label::Neither}) {
    os << "<rect x=\"" << coord(width + 10) << "\" y=\"" << coord(ly - 10)
       << "\" width=\"12\" height=\"12\" fill=\"" << label_color(l) << "\"/>\n";
    os << "<text x=\"" << coord(width + 28) << "\" y=\"" << coord(ly)
       << "\" font-family=\"monospace\" font-size=\"11\">" << label_name(l) << "</text>\n";
    ly += 18.0;
  }
  for (const Curve& c : curves) {
    os << "<line x1=\"" << coord(width + 10) << "\" y1=\"" << coord(ly - 4) << "\" x2=\""
       << coord(width + 22) << "\" y2=\"" << coord(ly - 4) << "\" stroke=\"" << c.color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << coord(width + 28) << "\" y=\"" << coord(ly)
       << "\" font-family=\"monospace\" font-size=\"11\">" << c.name << "</text>\n";
    ly += 18.0;
  }
  os << "<text x=\"" << coord(width + 10) << "\" y=\"" << coord(ly + 10)
     << "\" font-family=\"monospace\" font-size=\"11\">a = " << coord(p.a) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace shift2d
