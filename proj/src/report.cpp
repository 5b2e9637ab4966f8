#include "kb/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kb/errors.hpp"

namespace kb::report {

std::string num17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

json jnum(double x) {
  if (std::isfinite(x)) return x;
  return num17(x);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

}  // namespace

void write_csv(std::ostream& o, const std::vector<verify::StressRecord>& records) {
  o << csv_header << '\n';
  for (const auto& r : records) {
    o << r.trial_id << ',' << num17(r.lambda.lambda1) << ',' << num17(r.lambda.lambda2) << ','
      << radial::to_string(r.region) << ',' << num17(r.lhs) << ',' << num17(r.rhs) << ',' << num17(r.bound)
      << ',' << (r.ratio ? num17(*r.ratio) : "NA") << ',' << (r.pass ? "true" : "false") << ','
      << csv_field(r.note) << '\n';
  }
}

json record_json(const verify::StressRecord& r) {
  json j;
  j["trial_id"] = r.trial_id;
  j["lambda_re"] = jnum(r.lambda.lambda1);
  j["lambda_im"] = jnum(r.lambda.lambda2);
  j["region"] = radial::to_string(r.region);
  j["profile"] = r.profile_spec;
  j["potential"] = r.potential_spec;
  j["lhs"] = jnum(r.lhs);
  j["rhs"] = jnum(r.rhs);
  j["bound"] = jnum(r.bound);
  j["ratio"] = r.ratio ? jnum(*r.ratio) : json(nullptr);
  j["pass"] = r.pass;
  j["error"] = r.error;
  j["note"] = r.note;
  return j;
}

json records_json(const std::vector<verify::StressRecord>& records) {
  json a = json::array();
  for (const auto& r : records) a.push_back(record_json(r));
  return a;
}

json bounds_json(const verify::EstimateBounds& b) {
  json j;
  j["d"] = b.d;
  j["delta"] = jnum(b.delta);
  j["potential"] = b.V.spec();
  j["regime"] = b.regime;
  j["outside"] = jnum(b.outside);
  j["inside"] = jnum(b.inside);
  j["kato_yajima"] = jnum(b.kato_yajima);
  j["b"] = jnum(b.b);
  j["b1"] = jnum(b.b1);
  j["b2"] = jnum(b.b2);
  return j;
}

json summary_json(const stress::StressSummary& s) {
  json j;
  j["bounds"] = bounds_json(s.bounds);
  j["records"] = s.records.size();
  j["max_ratio"] = jnum(s.max_ratio);
  j["max_ratio_gradient"] = jnum(s.max_ratio_gradient);
  j["max_ratio_kato_yajima"] = jnum(s.max_ratio_kato_yajima);
  j["violations"] = s.violations;
  j["inside"] = s.inside;
  j["outside"] = s.outside;
  j["vacuous"] = s.vacuous;
  j["errors"] = s.errors;
  j["identity_checks"] = s.identity_checks;
  j["identity_skipped"] = s.identity_skipped;
  j["max_identity_residual"] = jnum(s.max_identity_residual);
  j["identity_failures"] = s.identity_failures;
  return j;
}

json constant_json(const constants::ConstantReport& r) {
  json j;
  j["name"] = r.name;
  j["d"] = jnum(r.d);
  json p = json::object();
  for (auto& [k, v] : r.params) p[k] = jnum(v);
  j["params"] = p;
  j["value"] = jnum(r.value);
  j["residual"] = jnum(r.residual);
  json w = json::object();
  for (auto& [k, v] : r.witness) w[k] = jnum(v);
  j["witness"] = w;
  j["limit_value"] = r.limit_value;
  return j;
}

std::string heatmap_svg(const stress::StressSummary& s, const stress::LambdaGrid& g, int profile_count) {
  const int nr = g.re_steps, ni = g.im_steps;
  std::vector<double> cell(static_cast<std::size_t>(nr) * ni, -1);
  const std::size_t per_lambda = 2 * static_cast<std::size_t>(profile_count);
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    std::size_t k = i / per_lambda;
    if (k >= cell.size()) break;
    const auto& r = s.records[i];
    if (r.ratio && std::isfinite(*r.ratio)) cell[k] = std::max(cell[k], *r.ratio);
  }
  const int cw = 40, ch = 28, ml = 70, mt = 30, mb = 50;
  const int W = ml + nr * cw + 20, H = mt + ni * ch + mb;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  o << "<text x=\"" << ml << "\" y=\"18\" font-size=\"12\">max lhs/(bound*rhs), d=" << s.bounds.d
    << ", delta=" << num17(s.bounds.delta) << "</text>\n";
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < ni; ++j) {
      double v = cell[static_cast<std::size_t>(i) * ni + j];
      std::string fill = "#cccccc";
      if (v >= 0) {
        double t = std::clamp(v, 0.0, 1.0);
        int red = static_cast<int>(255 * t), blue = static_cast<int>(255 * (1 - t));
        if (v > 1) red = 255, blue = 0;
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x40%02x", red, blue);
        fill = buf;
      }
      int x = ml + i * cw, y = mt + (ni - 1 - j) * ch;
      o << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cw << "\" height=\"" << ch << "\" fill=\"" << fill
        << "\"><title>" << (v >= 0 ? num17(v) : "NA") << "</title></rect>\n";
    }
  }
  auto pts = g.points();
  char buf[32];
  for (int i = 0; i < nr; ++i) {
    std::snprintf(buf, sizeof buf, "%.3g", pts[static_cast<std::size_t>(i) * ni].first);
    o << "<text x=\"" << ml + i * cw + cw / 2 << "\" y=\"" << mt + ni * ch + 14 << "\" text-anchor=\"middle\">" << buf << "</text>\n";
  }
  for (int j = 0; j < ni; ++j) {
    std::snprintf(buf, sizeof buf, "%.3g", pts[static_cast<std::size_t>(j)].second);
    o << "<text x=\"" << ml - 6 << "\" y=\"" << mt + (ni - 1 - j) * ch + ch / 2 + 4 << "\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  o << "<text x=\"" << ml + nr * cw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">Re lambda</text>\n";
  o << "<text x=\"14\" y=\"" << mt + ni * ch / 2 << "\" transform=\"rotate(-90 14 " << mt + ni * ch / 2
    << ")\" text-anchor=\"middle\">Im lambda</text>\n";
  o << "</svg>\n";
  return o.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path p(path);
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
    f << content;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename to '" + path + "'");
  }
}

}  // namespace kb::report
