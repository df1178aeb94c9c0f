#pragma once

// command-line surface; returns the process exit status:
//   0 all requested checks pass, 1 check failure, 2 usage error,
//   3 fatal oracle mismatch
int pk_run(int argc, const char* const* argv);
