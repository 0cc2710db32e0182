#pragma once

// Small helpers for driving the CLI binary from tests.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace test_support {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs a shell command and captures stdout (pass " 2>&1" to merge stderr).
inline RunResult run_command(const std::string& command) {
    RunResult result;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        result.output.append(buf, got);
    }
    const int status = ::pclose(pipe);
    if (status != -1 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

inline const char* cli_path_or_null() { return std::getenv("ACREDIT_BIN"); }

// Temp file that disappears with the test.
class TempFile {
public:
    TempFile(const std::string& contents, const std::string& suffix) {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("acredit_test_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter++) + suffix))
                    .string();
        std::ofstream out(path_);
        out << contents;
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace test_support
