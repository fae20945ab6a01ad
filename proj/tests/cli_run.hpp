#pragma once
// Run the CLI through the shell and capture stdout, stderr and the exit code.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace clitest {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

inline Result run(const std::string& exe, const std::string& args) {
    static int counter = 0;
    auto errfile = std::filesystem::temp_directory_path() /
                   ("fracseq-stderr-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::string cmd = "'" + exe + "' " + args + " 2>'" + errfile.string() + "'";
    Result r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(errfile.string());
    std::filesystem::remove(errfile);
    return r;
}

}  // namespace clitest
