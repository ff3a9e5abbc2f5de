#pragma once

#include <stdexcept>
#include <string>

namespace nlce {

// Base class for every error thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : error { using error::error; };
struct resource_error : error { using error::error; };
struct numeric_error : error { using error::error; };

// A weight-recursion input referenced a subcluster missing from the record set.
struct closure_error : error { using error::error; };

struct io_error : error { using error::error; };
struct file_format_error : io_error { using io_error::io_error; };
struct file_version_error : io_error { using io_error::io_error; };
struct file_checksum_error : io_error { using io_error::io_error; };
struct file_truncated_error : io_error { using io_error::io_error; };

// A loaded cluster set does not cover the requested lattice or order.
struct cluster_set_mismatch_error : error { using error::error; };

}  // namespace nlce
