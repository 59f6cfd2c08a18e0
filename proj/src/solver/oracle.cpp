#include "regabs/solver/oracle.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>

namespace regabs::solver {

std::string SolverSession::default_solver_path() {
    if (const char* env = std::getenv("REGABS_SOLVER"); env && *env) return env;
    char buf[4096];
    ssize_t n = ::readlink("/proc/self/exe", buf, sizeof(buf) - 1);
    if (n > 0) {
        buf[n] = 0;
        std::string dir(buf);
        size_t slash = dir.rfind('/');
        if (slash != std::string::npos) {
            std::string cand = dir.substr(0, slash) + "/regabs-smt";
            if (::access(cand.c_str(), X_OK) == 0) return cand;
        }
    }
    return "regabs-smt";
}

SolverSession::SolverSession(std::string path, int timeout_ms)
    : path_(path.empty() ? default_solver_path() : std::move(path)), timeout_ms_(timeout_ms) {}

SolverSession::~SolverSession() { shutdown(); }

void SolverSession::spawn() {
    if (pid_ > 0) return;
    int in_pipe[2], out_pipe[2];
    if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0)
        throw std::runtime_error("solver: pipe failed");
    pid_ = ::fork();
    if (pid_ < 0) throw std::runtime_error("solver: fork failed");
    if (pid_ == 0) {
        ::dup2(in_pipe[0], STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::close(in_pipe[0]);
        ::close(in_pipe[1]);
        ::close(out_pipe[0]);
        ::close(out_pipe[1]);
        ::execlp(path_.c_str(), path_.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    rdbuf_.clear();
}

void SolverSession::shutdown() {
    if (to_child_ >= 0) ::close(to_child_);
    if (from_child_ >= 0) ::close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
        ::kill(pid_, SIGKILL);
        int status = 0;
        ::waitpid(pid_, &status, 0);
        pid_ = -1;
    }
}

bool SolverSession::send(const std::string& text) {
    size_t off = 0;
    while (off < text.size()) {
        ssize_t n = ::write(to_child_, text.data() + off, text.size() - off);
        if (n <= 0) return false;
        off += static_cast<size_t>(n);
    }
    return true;
}

std::optional<std::string> SolverSession::read_line() {
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms_);
    while (true) {
        size_t nl = rdbuf_.find('\n');
        if (nl != std::string::npos) {
            std::string line = rdbuf_.substr(0, nl);
            rdbuf_.erase(0, nl + 1);
            return line;
        }
        auto now = std::chrono::steady_clock::now();
        if (now >= deadline) return std::nullopt;
        int wait_ms = static_cast<int>(
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
        struct pollfd pfd{from_child_, POLLIN, 0};
        int pr = ::poll(&pfd, 1, std::max(wait_ms, 1));
        if (pr <= 0) {
            if (pr == 0) continue;
            return std::nullopt;
        }
        char buf[4096];
        ssize_t n = ::read(from_child_, buf, sizeof(buf));
        if (n <= 0) return std::nullopt;
        rdbuf_.append(buf, static_cast<size_t>(n));
    }
}

Verdict3 SolverSession::check_sat(const Query& q, const logic::Vocabulary& vocab) {
    std::string key = canonical_key(q, vocab);
    if (auto it = cache_.find(key); it != cache_.end()) {
        ++stats_.cache_hits;
        return {it->second, ""};
    }
    ++stats_.queries;
    try {
        spawn();
    } catch (const std::exception& e) {
        ++stats_.unknown;
        return {V3::Unknown, std::string("process: ") + e.what()};
    }
    std::string text = "(reset)\n" + to_smtlib(q, vocab);
    if (!send(text)) {
        shutdown();
        ++stats_.unknown;
        return {V3::Unknown, "process: write failed"};
    }
    while (true) {
        auto line = read_line();
        if (!line) {
            shutdown();  // timed out or died; do not reuse the process
            ++stats_.unknown;
            return {V3::Unknown, "timeout"};
        }
        if (line->empty()) continue;
        if (*line == "sat") {
            ++stats_.sat;
            cache_[key] = V3::Sat;
            return {V3::Sat, ""};
        }
        if (*line == "unsat") {
            ++stats_.unsat;
            cache_[key] = V3::Unsat;
            return {V3::Unsat, ""};
        }
        if (*line == "unknown") {
            ++stats_.unknown;
            return {V3::Unknown, "solver reported unknown"};
        }
        if (line->rfind("(error", 0) == 0) {
            shutdown();
            ++stats_.unknown;
            return {V3::Unknown, "solver error: " + *line};
        }
        // ignore chatter (success, comments)
    }
}

std::string to_string(const Clause& c) {
    std::string s = "{";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ", ";
        s += logic::to_string(c[i]);
    }
    return s + "}";
}

int cmp(const Clause& a, const Clause& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (int c = logic::cmp(a[i], b[i])) return c;
    return 0;
}

bool check_implication_valid(SolverSession& s, const Query& psi, const Clause& c,
                             const logic::Vocabulary& vocab) {
    Query q = psi;
    for (const auto& lit : c) q.extra.push_back(logic::f_atom(logic::negate(lit)));
    return s.check_sat(q, vocab).v == V3::Unsat;
}

}  // namespace regabs::solver
