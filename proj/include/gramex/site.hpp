#pragma once
// Static HTML rendering of a bundle: an index with one section per aspect,
// a page per aspect, and a page per rule listing its examples.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gramex {

std::string html_escape(std::string_view s);

// Writes index.html, <aspect>.html, rules/<aspect>/<id>.html and style.css under
// `out_dir`. Returns the written paths relative to `out_dir`, sorted.
// The bundle is expected to have passed validate_bundle.
std::vector<std::string> emit_site(const nlohmann::json& bundle, const std::filesystem::path& out_dir);

}  // namespace gramex
