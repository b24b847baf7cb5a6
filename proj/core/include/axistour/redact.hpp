#pragma once

#include <string>

namespace axistour {

/// Display-time anonymization of URL-, email-, and phone-shaped tokens.
/// Applied when words are rendered (top-word dumps, plots), never to stored
/// embeddings. Non-matching tokens pass through untouched.
std::string redact_token(const std::string& token);

bool looks_like_url(const std::string& token);
bool looks_like_email(const std::string& token);
bool looks_like_phone(const std::string& token);

}  // namespace axistour
