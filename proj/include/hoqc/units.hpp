#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoqc {

enum class Dimension {
  kDimensionless,
  kLength,
  // Spectroscopic energy: J, wavenumber, frequency and angular frequency are
  // interchangeable through E = h nu = hbar omega = h c nu~.
  kEnergy,
  kRate,
  kTemperature,
  kMagneticField,
  kIntensity,
  kPower,
  kTime,
  kDispersionCoefficient,  // C6, energy x length^6
  kNumberDensity,
};

enum class Unit {
  kDimensionless,
  kMeter,
  kCentimeter,
  kMicrometer,
  kNanometer,
  kJoule,
  kInverseCentimeter,
  kHertz,
  kKilohertz,
  kMegahertz,
  kGigahertz,
  kRadianPerSecond,
  kPerSecond,
  kKelvin,
  kMicrokelvin,
  kTesla,
  kGauss,
  kWattPerSquareMeter,
  kWattPerSquareCentimeter,
  kWatt,
  kMilliwatt,
  kSecond,
  kMicrosecond,
  kNanosecond,
  kJouleMeter6,
  kHartreeBohr6,
  kPerCubicMeter,
  kPerCubicCentimeter,
};

/// Thrown when a conversion crosses physical dimensions.
class DimensionError : public std::invalid_argument {
 public:
  DimensionError(Unit from, Unit to);
  Unit from() const noexcept { return from_; }
  Unit to() const noexcept { return to_; }

 private:
  Unit from_;
  Unit to_;
};

Dimension dimension(Unit unit) noexcept;
std::string_view symbol(Unit unit) noexcept;

/// Size of one `unit` in the SI unit of its dimension.
double si_scale(Unit unit) noexcept;

struct Quantity {
  double value = 0.0;
  Unit unit = Unit::kDimensionless;

  /// Numeric value expressed in `target`; throws DimensionError.
  double in(Unit target) const;
};

Quantity convert(Quantity q, Unit target);

std::string to_string(Quantity q);

}  // namespace hoqc
