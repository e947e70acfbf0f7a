#include "hoqc/trap.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "hoqc/constants.hpp"

namespace hoqc {

namespace {

using namespace constants;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool parse_angular_momentum(std::string_view s, double& out) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_number(s, out) && out >= 0.0;
  double num = 0.0;
  double den = 0.0;
  if (!parse_number(trim(s.substr(0, slash)), num) ||
      !parse_number(trim(s.substr(slash + 1)), den) || den != 2.0 || num < 0.0) {
    return false;
  }
  out = num / den;
  return true;
}

enum class Column { kEnergy, kParity, kJ, kGamma, kLabel };

const std::map<std::string, Column, std::less<>>& column_names() {
  static const std::map<std::string, Column, std::less<>> names{
      {"energy_cm1", Column::kEnergy}, {"parity", Column::kParity}, {"J", Column::kJ},
      {"j", Column::kJ}, {"gamma_s1", Column::kGamma}, {"label", Column::kLabel}};
  return names;
}

double omega_from(Quantity q, const char* who) {
  const double w = q.in(Unit::kRadianPerSecond);
  if (!(w > 0.0)) throw std::invalid_argument(std::string(who) + ": frequency must be positive");
  return w;
}

struct LineTerms {
  double potential;   // J
  double scattering;  // s^-1
};

LineTerms line_terms(Quantity gamma, Quantity omega_a, Quantity omega_laser,
                     Quantity intensity, const char* who) {
  const double g = gamma.in(Unit::kPerSecond);
  if (!(g > 0.0)) throw std::invalid_argument(std::string(who) + ": gamma must be positive");
  const double wa = omega_from(omega_a, who);
  const double wl = omega_from(omega_laser, who);
  const double i = intensity.in(Unit::kWattPerSquareMeter);
  if (!(i >= 0.0)) throw std::invalid_argument(std::string(who) + ": negative intensity");
  const double delta = wl - wa;
  if (delta == 0.0) throw std::domain_error(std::string(who) + ": laser on resonance");
  const double u = 1.5 * kPi * kSpeedOfLight * kSpeedOfLight / (wa * wa * wa) * (g / delta) * i;
  return {u, u / kHbar * (g / delta)};
}

}  // namespace

LevelParseError::LevelParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

LevelTable parse_levels(std::string_view text, std::string source) {
  LevelTable table;
  table.source = std::move(source);

  std::array<int, 5> index{-1, -1, -1, -1, -1};
  bool have_header = false;
  std::size_t n_columns = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (!have_header) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        auto it = column_names().find(fields[c]);
        if (it == column_names().end()) {
          throw LevelParseError(line_no, "unknown column '" + std::string(fields[c]) + "'");
        }
        int& slot = index[static_cast<std::size_t>(it->second)];
        if (slot >= 0) {
          throw LevelParseError(line_no, "duplicate column '" + std::string(fields[c]) + "'");
        }
        slot = static_cast<int>(c);
      }
      for (Column required : {Column::kEnergy, Column::kParity, Column::kJ}) {
        if (index[static_cast<std::size_t>(required)] < 0) {
          throw LevelParseError(line_no, "header must name energy_cm1, parity and J");
        }
      }
      n_columns = fields.size();
      have_header = true;
      continue;
    }

    if (fields.size() != n_columns) {
      throw LevelParseError(line_no, "expected " + std::to_string(n_columns) + " fields, got " +
                                         std::to_string(fields.size()));
    }
    auto field = [&](Column c) -> std::string_view {
      const int i = index[static_cast<std::size_t>(c)];
      return i < 0 ? std::string_view{} : fields[static_cast<std::size_t>(i)];
    };

    LevelRecord rec;
    rec.line = line_no;
    if (!parse_number(field(Column::kEnergy), rec.energy_cm1) || rec.energy_cm1 < 0.0) {
      throw LevelParseError(line_no, "bad energy_cm1 '" + std::string(field(Column::kEnergy)) + "'");
    }
    const std::string_view parity = field(Column::kParity);
    if (parity == "e") {
      rec.parity = Parity::kEven;
    } else if (parity == "o") {
      rec.parity = Parity::kOdd;
    } else {
      throw LevelParseError(line_no, "parity must be 'e' or 'o', got '" + std::string(parity) + "'");
    }
    if (!parse_angular_momentum(field(Column::kJ), rec.j)) {
      throw LevelParseError(line_no, "bad J '" + std::string(field(Column::kJ)) + "'");
    }
    const std::string_view gamma = field(Column::kGamma);
    if (!gamma.empty()) {
      double g = 0.0;
      if (!parse_number(gamma, g) || !(g > 0.0)) {
        throw LevelParseError(line_no, "gamma_s1 must be positive, got '" + std::string(gamma) + "'");
      }
      rec.gamma = g;
    }
    rec.label = std::string(field(Column::kLabel));
    table.levels.push_back(std::move(rec));
  }

  std::stable_sort(table.levels.begin(), table.levels.end(),
                   [](const LevelRecord& a, const LevelRecord& b) {
                     return a.energy_cm1 < b.energy_cm1;
                   });
  for (std::size_t i = 1; i < table.levels.size(); ++i) {
    if (table.levels[i].energy_cm1 == table.levels[i - 1].energy_cm1) {
      std::ostringstream os;
      os << "duplicate energy " << table.levels[i].energy_cm1 << " cm^-1 (lines "
         << table.levels[i - 1].line << ", " << table.levels[i].line << "); both kept";
      table.warnings.push_back(os.str());
    }
  }
  for (const LevelRecord& rec : table.levels) {
    if (!rec.gamma_known()) {
      std::ostringstream os;
      os << "level " << rec.energy_cm1 << " cm^-1 has unknown gamma; excluded from sums";
      table.warnings.push_back(os.str());
    }
  }
  return table;
}

LevelTable load_levels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open level table '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_levels(buf.str(), path.string());
}

LevelTable documented_ho_levels() {
  return parse_levels(
      "energy_cm1,parity,J,gamma_s1,label\n"
      "24360.81,e,17/2,204e6,4f11(4I15/2)6s6p(1P1) J=17/2\n"
      "24660.80,e,15/2,200e6,4f11(4I15/2)6s6p(1P1) J=15/2\n"
      "25931,e,13/2,,4f10 5d 6s2 J=13/2\n"
      "26958,e,15/2,,4f11 6s6p J=15/2\n",
      "built-in");
}

bool dipole_allowed(const LevelRecord& level, const GroundLevel& ground) {
  if (level.parity == ground.parity) return false;
  const double dj = std::abs(level.j - ground.j);
  if (dj > 1.0) return false;
  return !(level.j == 0.0 && ground.j == 0.0);
}

void BeamParams::validate() const {
  if (!(power.in(Unit::kWatt) > 0.0) || !(waist.in(Unit::kMeter) > 0.0)) {
    throw std::invalid_argument("beam: power and waist must be positive");
  }
}

Quantity peak_intensity(const BeamParams& beam) {
  beam.validate();
  const double w = beam.waist.in(Unit::kMeter);
  return {2.0 * beam.power.in(Unit::kWatt) / (kPi * w * w), Unit::kWattPerSquareMeter};
}

Quantity line_potential(Quantity gamma, Quantity omega_a, Quantity omega_laser,
                        Quantity intensity) {
  return {line_terms(gamma, omega_a, omega_laser, intensity, "line_potential").potential,
          Unit::kJoule};
}

Quantity line_scattering(Quantity gamma, Quantity omega_a, Quantity omega_laser,
                         Quantity intensity) {
  return {line_terms(gamma, omega_a, omega_laser, intensity, "line_scattering").scattering,
          Unit::kPerSecond};
}

TrapSpectrum trap_spectrum(const LevelTable& levels, const BeamParams& beam,
                           std::span<const double> energies_cm1,
                           const SpectrumOptions& options) {
  std::vector<const LevelRecord*> used;
  TrapSpectrum spectrum;
  for (const LevelRecord& rec : levels.levels) {
    if (!dipole_allowed(rec, options.ground)) continue;
    if (!rec.gamma_known()) {
      std::ostringstream os;
      os << "dipole-allowed level at " << rec.energy_cm1
         << " cm^-1 excluded: unknown decay rate";
      spectrum.coverage_warnings.push_back(os.str());
      continue;
    }
    used.push_back(&rec);
  }
  if (used.empty()) {
    throw std::invalid_argument("trap_spectrum: no dipole-allowed level with known gamma");
  }
  spectrum.levels_used = static_cast<int>(used.size());

  const Quantity intensity = peak_intensity(beam);
  spectrum.points.reserve(energies_cm1.size());
  for (double e : energies_cm1) {
    SpectrumPoint point;
    point.energy_cm1 = e;
    const LevelRecord* near = nullptr;
    for (const LevelRecord* rec : used) {
      if (std::abs(e - rec->energy_cm1) <= options.min_detuning_cm1) {
        near = rec;
        break;
      }
    }
    if (!(e > 0.0)) {
      point.flag = "non-positive laser energy";
    } else if (near != nullptr) {
      std::ostringstream os;
      os << "within " << options.min_detuning_cm1 << " cm^-1 of resonance at "
         << near->energy_cm1;
      point.flag = os.str();
    } else {
      double u = 0.0;
      double r = 0.0;
      const Quantity laser{e, Unit::kInverseCentimeter};
      for (const LevelRecord* rec : used) {
        const LineTerms t = line_terms({*rec->gamma, Unit::kPerSecond},
                                       {rec->energy_cm1, Unit::kInverseCentimeter}, laser,
                                       intensity, "trap_spectrum");
        u += t.potential;
        r += t.scattering;
      }
      point.depth_uk = u / kBoltzmann * 1e6;
      point.scatter_s1 = r;
    }
    spectrum.points.push_back(std::move(point));
  }
  return spectrum;
}

void write_spectrum_csv(std::ostream& os, const TrapSpectrum& spectrum) {
  const auto old_precision = os.precision(10);
  os << "energy_cm1,depth_uK,scatter_s1,flag\n";
  for (const SpectrumPoint& p : spectrum.points) {
    os << p.energy_cm1 << ',';
    if (p.depth_uk) os << *p.depth_uk;
    os << ',';
    if (p.scatter_s1) os << *p.scatter_s1;
    os << ',';
    if (!p.flag.empty()) os << '"' << p.flag << '"';
    os << '\n';
  }
  os.precision(old_precision);
}

double blue_trap_scatter_reduction(Quantity temperature, Quantity depth) {
  const double u = depth.in(Unit::kJoule);
  if (!(u > 0.0)) throw std::invalid_argument("blue_trap_scatter_reduction: depth must be positive");
  const double t = temperature.in(Unit::kKelvin);
  if (!(t >= 0.0)) throw std::invalid_argument("blue_trap_scatter_reduction: negative temperature");
  return std::min(1.0, kBoltzmann * t / u);
}

}  // namespace hoqc
