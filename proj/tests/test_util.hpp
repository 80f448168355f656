#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace tsforge::testutil {

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        const auto tag = std::to_string(rd()) + "-" + std::to_string(rd());
        path_ = std::filesystem::temp_directory_path() / ("tsforge-test-" + tag);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write_file(const std::string& name, const std::string& content) const {
        const auto file = path_ / name;
        std::ofstream out(file);
        out << content;
        return file;
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace tsforge::testutil
