fn main() {
    // Die quietly when stdout is closed mid-pipe instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(spreadkit::cli::run(std::env::args()));
}
