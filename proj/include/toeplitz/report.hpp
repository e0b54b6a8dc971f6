#pragma once

// Ordered key/value reports rendered as `key = value` lines or as JSON.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace toeplitz {

  class Report {
   public:
    using Json = nlohmann::ordered_json;
    using Path = std::vector<std::string>;

    void set(Path path, Json value) {
      _entries.emplace_back(std::move(path), std::move(value));
    }

    std::vector<std::pair<Path, Json>> const& entries() const noexcept {
      return _entries;
    }

    //! One `a.b.c = value` line per entry.  Entries with a multi-part path
    //! are grouped by their first component, with a blank line between groups.
    std::string to_text() const {
      std::string out;
      for (std::size_t i = 0; i < _entries.size(); ++i) {
        auto const& [path, value] = _entries[i];
        if (i > 0 && section(_entries[i - 1].first) != section(path)) {
          out += '\n';
        }
        std::string key;
        for (auto const& p : path) {
          key += (key.empty() ? "" : ".") + p;
        }
        out += key + " = " + scalar_text(value) + '\n';
      }
      return out;
    }

    Json to_json() const {
      Json root = Json::object();
      for (auto const& [path, value] : _entries) {
        Json* node = &root;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          node = &(*node)[path[i]];
        }
        (*node)[path.back()] = value;
      }
      return root;
    }

   private:
    static std::string section(Path const& p) {
      return p.size() > 1 ? p.front() : std::string();
    }

    static std::string scalar_text(Json const& v) {
      if (v.is_string()) {
        return v.get<std::string>();
      }
      if (v.is_array()) {
        std::string out;
        for (auto const& x : v) {
          out += (out.empty() ? "" : ", ") + scalar_text(x);
        }
        return out;
      }
      if (v.is_null()) {
        return "none";
      }
      return v.dump();
    }

    std::vector<std::pair<Path, Json>> _entries;
  };

}  // namespace toeplitz
