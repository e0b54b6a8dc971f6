#pragma once

// Finite prefixes of odometer points, the +n action, and the coordinates of
// the factor map onto the odometer.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/error.hpp"
#include "toeplitz/supernatural.hpp"

namespace toeplitz {

  namespace detail {

    inline void require_chain(std::span<std::int64_t const> periods) {
      if (periods.empty()) {
        throw DivisibilityError("an odometer prefix needs at least one period");
      }
      for (std::size_t i = 0; i < periods.size(); ++i) {
        if (periods[i] <= 1) {
          throw DivisibilityError("odometer periods must exceed 1");
        }
        if (i > 0 && periods[i] % periods[i - 1] != 0) {
          throw DivisibilityError(std::to_string(periods[i - 1])
                                  + " does not divide "
                                  + std::to_string(periods[i]));
        }
      }
    }

  }  // namespace detail

  //! (m_0, ..., m_d) with 0 <= m_i < u_i and m_j = m_i (mod u_i) for i < j.
  class OdometerPoint {
   public:
    OdometerPoint(std::vector<std::int64_t> periods,
                  std::vector<std::int64_t> coords)
        : _periods(std::move(periods)), _coords(std::move(coords)) {
      detail::require_chain(_periods);
      if (_coords.size() != _periods.size()) {
        throw Error("odometer point has " + std::to_string(_coords.size())
                    + " coordinates for " + std::to_string(_periods.size())
                    + " periods");
      }
      for (std::size_t i = 0; i < _coords.size(); ++i) {
        if (_coords[i] < 0 || _coords[i] >= _periods[i]) {
          throw Error("odometer coordinate out of range");
        }
        if (i > 0 && _coords[i] % _periods[i - 1] != _coords[i - 1]) {
          throw Error("odometer coordinates are not coherent at index "
                      + std::to_string(i));
        }
      }
    }

    std::vector<std::int64_t> const& periods() const noexcept {
      return _periods;
    }

    std::vector<std::int64_t> const& coords() const noexcept {
      return _coords;
    }

    friend bool operator==(OdometerPoint const&,
                           OdometerPoint const&) = default;

   private:
    std::vector<std::int64_t> _periods;
    std::vector<std::int64_t> _coords;
  };

  inline OdometerPoint odometer_add(OdometerPoint const& x, std::int64_t n) {
    auto c = x.coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto u = x.periods()[i];
      c[i]   = mod(c[i] + mod(n, u), u);
    }
    return OdometerPoint(x.periods(), std::move(c));
  }

  //! Coordinates of sigma^k(alpha) under the factor map: m_i = k mod u_i.
  inline OdometerPoint psi_coordinates(std::int64_t                  k,
                                       std::span<std::int64_t const> periods) {
    std::vector<std::int64_t> c;
    for (auto u : periods) {
      c.push_back(mod(k, u));
    }
    return OdometerPoint({periods.begin(), periods.end()}, std::move(c));
  }

  //! Odometers are conjugate iff their supernatural numbers agree.
  inline bool odometers_conjugate(SupernaturalNumber const& u,
                                  SupernaturalNumber const& v) {
    return supernatural_equal(u, v);
  }

}  // namespace toeplitz
