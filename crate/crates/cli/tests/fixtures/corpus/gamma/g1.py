"""Worker one."""
import clean


def process_data(payload):
    """Process a payload."""
    return clean.greet(str(payload))
