#pragma once

// Supernatural numbers: formal products of prime powers whose exponents may be
// infinite.  Scales of Toeplitz sequences and odometer invariants live here.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toeplitz/error.hpp"

namespace toeplitz {

  using Exponent = std::uint32_t;

  //! The exponent token `inf`.
  inline constexpr Exponent kInfinity = std::numeric_limits<Exponent>::max();

  namespace detail {

    inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
      std::uint64_t r = 0;
      if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in supernatural arithmetic");
      }
      return r;
    }

    inline std::uint64_t checked_pow(std::uint64_t base, Exponent e) {
      std::uint64_t r = 1;
      for (Exponent i = 0; i < e; ++i) {
        r = checked_mul(r, base);
      }
      return r;
    }

    inline bool is_prime(std::uint64_t n) {
      if (n < 2) {
        return false;
      }
      for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
          return false;
        }
      }
      return true;
    }

    // Trial division; the integers handled here are periods of towers.
    inline std::map<std::uint64_t, Exponent> factorize(std::uint64_t n) {
      std::map<std::uint64_t, Exponent> out;
      for (std::uint64_t d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
          ++out[d];
          n /= d;
        }
      }
      if (n > 1) {
        ++out[n];
      }
      return out;
    }

    inline std::string trim(std::string_view s) {
      auto b = s.find_first_not_of(" \t\r\n");
      if (b == std::string_view::npos) {
        return {};
      }
      auto e = s.find_last_not_of(" \t\r\n");
      return std::string(s.substr(b, e - b + 1));
    }

  }  // namespace detail

  class SupernaturalNumber {
   public:
    using factor_map = std::map<std::uint64_t, Exponent>;

    //! The supernatural number 1.
    SupernaturalNumber() = default;

    static SupernaturalNumber from_integer(std::uint64_t n) {
      if (n == 0) {
        throw Error("0 is not a supernatural number");
      }
      SupernaturalNumber u;
      u._factors = detail::factorize(n);
      return u;
    }

    static SupernaturalNumber from_factors(factor_map const& factors) {
      SupernaturalNumber u;
      for (auto [p, e] : factors) {
        if (!detail::is_prime(p)) {
          throw Error(std::to_string(p) + " is not prime");
        }
        if (e != 0) {
          u._factors[p] = e;
        }
      }
      return u;
    }

    //! lcm of the progression first, first*ratio, first*ratio^2, ...  Every
    //! prime dividing `ratio` gets exponent infinity.
    static SupernaturalNumber lcm_of_progression(std::uint64_t first,
                                                 std::uint64_t ratio) {
      auto u = from_integer(first);
      if (ratio > 1) {
        for (auto [p, e] : detail::factorize(ratio)) {
          (void) e;
          u._factors[p] = kInfinity;
        }
      }
      return u;
    }

    //! Parses `2^inf * 5`, `2^2 * 3`, `1`.  Whitespace is insignificant.
    static SupernaturalNumber parse(std::string_view text) {
      SupernaturalNumber u;
      auto               body = detail::trim(text);
      if (body.empty()) {
        throw ParseError(1, 1, "empty supernatural number");
      }
      if (body == "1") {
        return u;
      }
      std::size_t pos = 0;
      while (pos <= text.size()) {
        auto star = text.find('*', pos);
        auto term_end = star == std::string_view::npos ? text.size() : star;
        auto term = text.substr(pos, term_end - pos);
        auto col = pos + 1;
        auto t = detail::trim(term);
        if (t.empty()) {
          throw ParseError(1, col, "empty factor");
        }
        auto caret = t.find('^');
        auto base_txt = detail::trim(t.substr(0, caret));
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(
            base_txt.data(), base_txt.data() + base_txt.size(), p);
        if (ec != std::errc() || ptr != base_txt.data() + base_txt.size()) {
          throw ParseError(1, col, "bad prime '" + base_txt + "'");
        }
        if (!detail::is_prime(p)) {
          throw ParseError(1, col, std::to_string(p) + " is not prime");
        }
        Exponent e = 1;
        if (caret != std::string::npos) {
          auto exp_txt = detail::trim(std::string_view(t).substr(caret + 1));
          if (exp_txt == "inf") {
            e = kInfinity;
          } else {
            auto [ptr2, ec2] = std::from_chars(
                exp_txt.data(), exp_txt.data() + exp_txt.size(), e);
            if (ec2 != std::errc() || ptr2 != exp_txt.data() + exp_txt.size()
                || e == 0 || e == kInfinity) {
              throw ParseError(1, col, "bad exponent '" + exp_txt + "'");
            }
          }
        }
        if (u._factors.count(p) != 0) {
          throw ParseError(1, col, "prime " + std::to_string(p) + " repeated");
        }
        u._factors[p] = e;
        if (star == std::string_view::npos) {
          break;
        }
        pos = star + 1;
      }
      return u;
    }

    factor_map const& factors() const noexcept {
      return _factors;
    }

    Exponent exponent(std::uint64_t prime) const {
      auto it = _factors.find(prime);
      return it == _factors.end() ? 0 : it->second;
    }

    bool is_one() const noexcept {
      return _factors.empty();
    }

    bool is_finite() const noexcept {
      return std::none_of(_factors.begin(), _factors.end(), [](auto const& kv) {
        return kv.second == kInfinity;
      });
    }

    //! The integer value; only defined for finite numbers.
    std::uint64_t value() const {
      if (!is_finite()) {
        throw Error("supernatural number " + to_string() + " is infinite");
      }
      std::uint64_t r = 1;
      for (auto [p, e] : _factors) {
        r = detail::checked_mul(r, detail::checked_pow(p, e));
      }
      return r;
    }

    std::uint64_t largest_prime() const noexcept {
      return _factors.empty() ? 1 : _factors.rbegin()->first;
    }

    //! True iff the positive integer `q` is a factor, i.e. divides some finite
    //! truncation.
    bool divisible_by(std::uint64_t q) const {
      if (q == 0) {
        return false;
      }
      for (auto [p, e] : detail::factorize(q)) {
        if (exponent(p) < e) {
          return false;
        }
      }
      return true;
    }

    std::string to_string() const {
      if (_factors.empty()) {
        return "1";
      }
      std::string out;
      for (auto [p, e] : _factors) {
        if (!out.empty()) {
          out += " * ";
        }
        out += std::to_string(p);
        if (e == kInfinity) {
          out += "^inf";
        } else if (e != 1) {
          out += "^" + std::to_string(e);
        }
      }
      return out;
    }

    friend bool operator==(SupernaturalNumber const&,
                           SupernaturalNumber const&) = default;

   private:
    factor_map _factors;
  };

  //! Pointwise maximum of exponents; infinity absorbs.
  inline SupernaturalNumber supernatural_lcm(SupernaturalNumber const& a,
                                             SupernaturalNumber const& b) {
    auto f = a.factors();
    for (auto [p, e] : b.factors()) {
      f[p] = std::max(f[p], e);
    }
    return SupernaturalNumber::from_factors(f);
  }

  inline bool supernatural_equal(SupernaturalNumber const& a,
                                 SupernaturalNumber const& b) {
    return a == b;
  }

  inline bool divides(std::uint64_t q, SupernaturalNumber const& u) {
    return u.divisible_by(q);
  }

}  // namespace toeplitz
