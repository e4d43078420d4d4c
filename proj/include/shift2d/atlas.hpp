#pragma once

#include <string>
#include <vector>

#include "shift2d/axy_region.hpp"

namespace shift2d {

struct AtlasParams {
  double a = 0.5;
  double xmin = 0.45;
  double xmax = 0.66;
  double ymin = 0.95;
  double ymax = 1.00;
  int nx = 200;
  int ny = 200;
  Method method = Method::ClosedForm;
  int threads = 0;  // 0: hardware concurrency
  PsdTolerance tol;
};

struct AtlasRow {
  double a = 0.0;
  double x = 0.0;
  double y = 0.0;
  Label label = Label::Out;
  double margin_sub = 0.0;
  double margin_hypo = 0.0;
  double margin_sh = 0.0;
  double margin_wh = 0.0;
  bool boundary = false;
  Method method = Method::ClosedForm;
};

// Grid includes both endpoints; rows are ordered x-major then y.
std::vector<AtlasRow> run_atlas(const AtlasParams& params);

inline constexpr const char* kAtlasHeader = "a,x,y,label,margin_sub,margin_hypo,margin_sh,margin_wh,boundary,method";

std::string atlas_csv(const std::vector<AtlasRow>& rows);
std::string atlas_svg(const AtlasParams& params, const std::vector<AtlasRow>& rows);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace shift2d
