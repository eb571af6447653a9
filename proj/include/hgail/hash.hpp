#pragma once

#include <string>

namespace hgail {

// SHA-1 digest of a byte string, lowercase hex
std::string sha1_hex(const std::string& data);

// git blob hash: sha1("blob <len>\0<content>")
std::string git_blob_hash(const std::string& content);

}  // namespace hgail
