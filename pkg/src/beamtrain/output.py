"""CSV and vector-graphics writers for sweep results."""
import csv
import io
import os

CSV_HEADER = ("snr_db", "mean_com", "std_com", "mean_11ad", "std_11ad", "mean_gain", "iters", "seed")


def format_csv(result):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.rows:
        # repr gives the shortest round-trip representation of a float
        floats = (row.snr_db, row.mean_com, row.std_com,
                  row.mean_11ad, row.std_11ad, row.mean_gain)
        writer.writerow([repr(float(x)) for x in floats] + [int(row.iters), int(result.seed)])
    return buf.getvalue()


def emit_csv(result, path):
    path = os.fspath(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(result))
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV: {exc.strerror}", path) from None
    return path


def emit_plot(result, path):
    """Capacity-vs-SNR figure for both methods. SVG unless ``path`` ends in .pdf."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not result.rows:
        raise ValueError("cannot plot an empty result")
    path = os.fspath(path)
    fmt = "pdf" if path.lower().endswith(".pdf") else "svg"
    snr = [r.snr_db for r in result.rows]
    with matplotlib.rc_context({"svg.hashsalt": "beamtrain", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        (com,) = ax.plot(snr, [r.mean_com for r in result.rows], "o-", label="COM")
        (base,) = ax.plot(snr, [r.mean_11ad for r in result.rows], "s--", label="802.11ad/ay max energy")
        com.set_gid("curve-com")
        base.set_gid("curve-11ad")
        ax.set_xlabel("SNR (dB)")
        ax.set_ylabel("Capacity (bit/s/Hz)")
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        metadata = {"Date": None} if fmt == "svg" else {"CreationDate": None}
        try:
            fig.savefig(path, format=fmt, metadata=metadata)
        except OSError as exc:
            raise OSError(exc.errno, f"cannot write plot: {exc.strerror}", path) from None
        finally:
            plt.close(fig)
    return path
