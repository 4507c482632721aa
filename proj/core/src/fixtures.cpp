#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sasaki/errors.hpp"
#include "sasaki/models.hpp"

namespace sasaki {

namespace {

constexpr const char* kFormatTag = "sasaki-points";

std::string exact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_fixture(std::ostream& os, const PointFixture& fx) {
  os << "format " << kFormatTag << ' ' << fx.version << '\n';
  os << "model " << model_name(fx.spec.kind) << '\n';
  os << "k " << fx.spec.k << '\n';
  os << "seed " << fx.spec.seed << '\n';
  os << "count " << fx.points.size() << '\n';
  for (const auto& [name, value] : fx.bounds) os << "bound " << name << ' ' << exact(value) << '\n';
  for (std::size_t i = 0; i < fx.points.size(); ++i) {
    os << "point " << i;
    for (double x : fx.points[i]) os << ' ' << exact(x);
    os << '\n';
  }
}

PointFixture read_fixture(std::istream& is) {
  PointFixture fx;
  std::string line;
  std::size_t expected = 0;
  bool have_format = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "format") {
      std::string tag;
      ls >> tag >> fx.version;
      if (tag != kFormatTag || fx.version != 1)
        throw StructuralError("unsupported fixture format '" + tag + "' version " +
                              std::to_string(fx.version));
      have_format = true;
    } else if (key == "model") {
      std::string name;
      ls >> name;
      fx.spec.kind = parse_model(name);
    } else if (key == "k") {
      ls >> fx.spec.k;
    } else if (key == "seed") {
      ls >> fx.spec.seed;
    } else if (key == "count") {
      ls >> expected;
    } else if (key == "bound") {
      std::string name;
      double value = 0.0;
      ls >> name >> value;
      fx.bounds[name] = value;
    } else if (key == "point") {
      std::size_t index = 0;
      ls >> index;
      if (index != fx.points.size()) throw StructuralError("fixture points out of order");
      Point p;
      for (double x; ls >> x;) p.push_back(x);
      fx.points.push_back(std::move(p));
    } else {
      throw StructuralError("unknown fixture key '" + key + "'");
    }
    if (ls.fail() && !ls.eof()) throw StructuralError("malformed fixture line: " + line);
  }
  if (!have_format) throw StructuralError("fixture lacks a format line");
  if (fx.points.size() != expected) throw StructuralError("fixture point count mismatch");
  fx.spec.sample_count = static_cast<int>(expected);
  return fx;
}

}  // namespace sasaki
