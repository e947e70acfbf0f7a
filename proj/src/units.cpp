#include "hoqc/units.hpp"

#include <sstream>

#include "hoqc/constants.hpp"

namespace hoqc {

namespace {

using namespace constants;

struct UnitInfo {
  Dimension dim;
  double scale;
  std::string_view symbol;
};

constexpr UnitInfo info(Unit unit) noexcept {
  switch (unit) {
    case Unit::kDimensionless: return {Dimension::kDimensionless, 1.0, "1"};
    case Unit::kMeter: return {Dimension::kLength, 1.0, "m"};
    case Unit::kCentimeter: return {Dimension::kLength, 1e-2, "cm"};
    case Unit::kMicrometer: return {Dimension::kLength, 1e-6, "um"};
    case Unit::kNanometer: return {Dimension::kLength, 1e-9, "nm"};
    case Unit::kJoule: return {Dimension::kEnergy, 1.0, "J"};
    case Unit::kInverseCentimeter:
      return {Dimension::kEnergy, kPlanck * kSpeedOfLight * 100.0, "cm^-1"};
    case Unit::kHertz: return {Dimension::kEnergy, kPlanck, "Hz"};
    case Unit::kKilohertz: return {Dimension::kEnergy, kPlanck * 1e3, "kHz"};
    case Unit::kMegahertz: return {Dimension::kEnergy, kPlanck * 1e6, "MHz"};
    case Unit::kGigahertz: return {Dimension::kEnergy, kPlanck * 1e9, "GHz"};
    case Unit::kRadianPerSecond: return {Dimension::kEnergy, kHbar, "rad/s"};
    case Unit::kPerSecond: return {Dimension::kRate, 1.0, "s^-1"};
    case Unit::kKelvin: return {Dimension::kTemperature, 1.0, "K"};
    case Unit::kMicrokelvin: return {Dimension::kTemperature, 1e-6, "uK"};
    case Unit::kTesla: return {Dimension::kMagneticField, 1.0, "T"};
    case Unit::kGauss: return {Dimension::kMagneticField, 1e-4, "G"};
    case Unit::kWattPerSquareMeter: return {Dimension::kIntensity, 1.0, "W/m^2"};
    case Unit::kWattPerSquareCentimeter:
      return {Dimension::kIntensity, 1e4, "W/cm^2"};
    case Unit::kWatt: return {Dimension::kPower, 1.0, "W"};
    case Unit::kMilliwatt: return {Dimension::kPower, 1e-3, "mW"};
    case Unit::kSecond: return {Dimension::kTime, 1.0, "s"};
    case Unit::kMicrosecond: return {Dimension::kTime, 1e-6, "us"};
    case Unit::kNanosecond: return {Dimension::kTime, 1e-9, "ns"};
    case Unit::kJouleMeter6: return {Dimension::kDispersionCoefficient, 1.0, "J m^6"};
    case Unit::kHartreeBohr6:
      return {Dimension::kDispersionCoefficient,
              kHartreeEnergy * kBohrRadius * kBohrRadius * kBohrRadius *
                  kBohrRadius * kBohrRadius * kBohrRadius,
              "Eh a0^6"};
    case Unit::kPerCubicMeter: return {Dimension::kNumberDensity, 1.0, "m^-3"};
    case Unit::kPerCubicCentimeter: return {Dimension::kNumberDensity, 1e6, "cm^-3"};
  }
  return {Dimension::kDimensionless, 1.0, "?"};
}

std::string mismatch_message(Unit from, Unit to) {
  std::ostringstream os;
  os << "cannot convert " << info(from).symbol << " to " << info(to).symbol
     << ": incompatible dimensions";
  return os.str();
}

}  // namespace

DimensionError::DimensionError(Unit from, Unit to)
    : std::invalid_argument(mismatch_message(from, to)), from_(from), to_(to) {}

Dimension dimension(Unit unit) noexcept { return info(unit).dim; }
std::string_view symbol(Unit unit) noexcept { return info(unit).symbol; }
double si_scale(Unit unit) noexcept { return info(unit).scale; }

double Quantity::in(Unit target) const {
  if (unit == target) return value;
  const UnitInfo from_info = info(unit);
  const UnitInfo to_info = info(target);
  if (from_info.dim != to_info.dim) throw DimensionError(unit, target);
  return value * (from_info.scale / to_info.scale);
}

Quantity convert(Quantity q, Unit target) { return {q.in(target), target}; }

std::string to_string(Quantity q) {
  std::ostringstream os;
  os.precision(10);
  os << q.value << ' ' << symbol(q.unit);
  return os.str();
}

}  // namespace hoqc
