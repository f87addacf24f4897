import os


def template_directory():
    dir_f = os.path.abspath(os.path.dirname(__file__))
    return os.path.join(dir_f, "report")


def reference_configs():
    """Bundled reconstruction configurations, name -> path."""
    dir_f = os.path.abspath(os.path.dirname(__file__))
    cfg_dir = os.path.join(dir_f, "configs")
    cfg_list = {}
    for root, dirs, files in os.walk(cfg_dir):
        for file in sorted(files):
            if file.endswith(".cfg"):
                cfg_list[os.path.splitext(file)[0]] = os.path.join(root, file)

    return cfg_list
