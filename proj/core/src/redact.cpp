#include "axistour/redact.hpp"

#include <algorithm>
#include <cctype>

namespace axistour {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

std::string tld_of(const std::string& s) {
  for (const char* tld : {".com", ".org", ".net", ".edu", ".gov", ".io"}) {
    if (ends_with(s, tld)) return tld;
  }
  return "";
}

}  // namespace

bool looks_like_url(const std::string& token) {
  if (starts_with(token, "http://") || starts_with(token, "https://") ||
      starts_with(token, "www.")) {
    return true;
  }
  return !tld_of(token).empty() && token.find('@') == std::string::npos;
}

bool looks_like_email(const std::string& token) {
  const auto at = token.find('@');
  if (at == std::string::npos || at == 0 || at + 1 >= token.size()) return false;
  const auto dot = token.find('.', at + 1);
  return dot != std::string::npos && dot + 1 < token.size();
}

bool looks_like_phone(const std::string& token) {
  int digits = 0;
  int dashes = 0;
  for (char c : token) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++digits;
    } else if (c == '-') {
      ++dashes;
    } else {
      return false;
    }
  }
  return dashes >= 2 && digits >= 7;
}

std::string redact_token(const std::string& token) {
  if (looks_like_email(token)) {
    std::string tld = tld_of(token);
    return "***@***" + (tld.empty() ? std::string(".***") : tld);
  }
  if (looks_like_url(token)) {
    std::string scheme;
    if (starts_with(token, "http://")) scheme = "http://";
    if (starts_with(token, "https://")) scheme = "https://";
    std::string tld = tld_of(token);
    return scheme + "***" + (tld.empty() ? std::string(".***") : tld);
  }
  if (looks_like_phone(token)) {
    std::string out;
    for (char c : token) {
      out += std::isdigit(static_cast<unsigned char>(c)) ? '*' : c;
    }
    return out;
  }
  return token;
}

}  // namespace axistour
