#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace weilkit::cli {

struct CommandResult {
    int exit_code = 0;     // 0 success, 2 domain rejection, 1 error
    std::string output;    // a single JSON document (or help text)
    bool wrote_file = false;
};

// Runs one request; args exclude the program name.
CommandResult run(const std::vector<std::string>& args);

std::string sha256_hex(const std::string& data);

// Content-addressed store of command outputs keyed by
// (subcommand, canonical input, library version).
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
    // WEILKIT_CACHE_DIR, when set and non-empty.
    static std::optional<ResultCache> from_environment();

    static std::string key(const std::string& subcommand, const io::json& canonical_input);
    std::optional<CommandResult> load(const std::string& key) const;
    void store(const std::string& key, const CommandResult& result) const;
    std::filesystem::path path_for(const std::string& key) const { return dir_ / (key + ".json"); }

private:
    std::filesystem::path dir_;
};

// Diff report for CSV ("q,c0,c1,...") or JSON ([{q, coefficients}]) input.
// A context restricts the accepted q; the degree bound defaults to the
// largest accepted degree.
io::json ingest_text(const std::string& text, const std::optional<GlobalContext>& ctx,
                     const std::optional<int>& degree_bound);

}  // namespace weilkit::cli
