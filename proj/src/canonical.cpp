#include "nanda/canonical.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace nanda {

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  const auto n = s.size();
  while (i < n) {
    const auto b = static_cast<unsigned char>(s[i]);
    std::size_t len;
    if (b < 0x80) {
      len = 1;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      if (b < 0xC2) return false;  // overlong
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      if (b > 0xF4) return false;  // > U+10FFFF
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += len;
  }
  return true;
}

void write_escaped(const std::string& s, std::string& out) {
  if (!valid_utf8(s)) fail(Err::invalid_utf8, "string is not valid UTF-8");
  out.push_back('"');
  for (const char c : s) {
    const auto u = static_cast<unsigned char>(c);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (u < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", u);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void write_number(const Json& v, std::string& out) {
  char buf[64];
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(Err::non_finite_number, "NaN/Inf not encodable");
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    out.append(buf, ptr);
  } else if (v.is_number_unsigned()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v.get<std::uint64_t>());
    out.append(buf, ptr);
  } else {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v.get<std::int64_t>());
    out.append(buf, ptr);
  }
}

void encode(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
    case Json::value_t::string: write_escaped(v.get_ref<const std::string&>(), out); break;
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
    case Json::value_t::number_float: write_number(v, out); break;
    case Json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out.push_back(',');
        first = false;
        encode(item, out);
      }
      out.push_back(']');
      break;
    }
    case Json::value_t::object: {
      // nlohmann's object_t is std::map, so iteration is already in
      // lexicographic key order.
      out.push_back('{');
      bool first = true;
      for (const auto& [key, value] : v.items()) {
        if (!first) out.push_back(',');
        first = false;
        write_escaped(key, out);
        out.push_back(':');
        encode(value, out);
      }
      out.push_back('}');
      break;
    }
    default: fail(Err::parse_failure, "unencodable JSON value type");
  }
}

}  // namespace

std::string canonical_json(const Json& doc) {
  std::string out;
  out.reserve(256);
  encode(doc, out);
  return out;
}

Bytes canonical_bytes(const Json& doc) {
  const std::string s = canonical_json(doc);
  return Bytes(s.begin(), s.end());
}

Sha256 canonical_digest(const Json& doc) { return sha256(canonical_json(doc)); }

Json parse_json(std::string_view text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(Err::parse_failure, "invalid JSON");
  return doc;
}

}  // namespace nanda
