#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"

#ifndef WEILKIT_VERSION
#define WEILKIT_VERSION "unknown"
#endif

namespace weilkit::cli {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

std::optional<ResultCache> ResultCache::from_environment() {
    const char* dir = std::getenv("WEILKIT_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return ResultCache(dir);
}

std::string ResultCache::key(const std::string& subcommand, const io::json& canonical_input) {
    return sha256_hex(subcommand + "\n" + canonical_input.dump() + "\n" + WEILKIT_VERSION);
}

std::optional<CommandResult> ResultCache::load(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        const auto j = io::json::parse(ss.str());
        CommandResult r;
        r.exit_code = j.at("exit_code").get<int>();
        r.output = j.at("output").get<std::string>();
        return r;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable entries are recomputed
    }
}

void ResultCache::store(const std::string& key, const CommandResult& result) const {
    std::filesystem::create_directories(dir_);
    const auto target = path_for(key);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write cache entry " + tmp.string());
        out << io::json{{"exit_code", result.exit_code}, {"output", result.output}}.dump();
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace weilkit::cli
